#pragma once

namespace lindgain::special {

/// Modified Bessel function of the second kind K_n(x) for n in {0, 1, 2}.
///
/// Power series for x < 2, Steed/Temme continued fraction for x >= 2, and the
/// upward recurrence K_2 = K_0 + (2/x) K_1. Relative accuracy ~1e-13 on
/// [0.05, 100]; underflows to 0 for very large x.
///
/// Throws DomainError for x <= 0 or n outside {0, 1, 2}.
double bessel_k(int n, double x);

} // namespace lindgain::special
