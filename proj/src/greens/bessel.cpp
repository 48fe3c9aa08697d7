#include "lindgain/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "lindgain/error.hpp"

namespace lindgain::special {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIterations = 100000;

// K_0 and K_1 from the ascending series:
//   K_0 = -(ln(x/2) + gamma) I_0 + sum_k H_k q^k / (k!)^2
//   K_1 = 1/x + ln(x/2) I_1 - (x/4) sum_k (psi(k+1) + psi(k+2)) q^k / (k! (k+1)!)
// with q = x^2/4 and H_k the harmonic numbers.
std::pair<double, double> k01_series(double x)
{
    const double q = 0.25 * x * x;
    const double log_half = std::log(0.5 * x);
    const double gamma = std::numbers::egamma;

    double i0 = 0.0;
    double i1 = 0.0;
    double s0 = 0.0;
    double s1 = 0.0;
    double term0 = 1.0; // q^k / (k!)^2
    double term1 = 1.0; // q^k / (k! (k+1)!)
    double harmonic = 0.0; // H_k
    for (int k = 0; k < 200; ++k) {
        if (k > 0) {
            term0 *= q / (double(k) * double(k));
            term1 *= q / (double(k) * double(k + 1));
            harmonic += 1.0 / double(k);
        }
        const double psi_sum = 2.0 * (-gamma + harmonic) + 1.0 / double(k + 1);
        i0 += term0;
        i1 += term1;
        s0 += harmonic * term0;
        s1 += psi_sum * term1;
        if (term0 < kEps * i0 && term1 < kEps * i1 && k > 2) {
            break;
        }
    }
    i1 *= 0.5 * x;

    const double k0 = -(log_half + gamma) * i0 + s0;
    const double k1 = 1.0 / x + log_half * i1 - 0.25 * x * s1;
    return {k0, k1};
}

// Steed's method on Temme's CF2 at order 0 (Numerical Recipes, bessik).
std::pair<double, double> k01_continued_fraction(double x)
{
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i < kMaxIterations; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) {
            break;
        }
    }
    if (i == kMaxIterations) {
        throw Error("bessel_k: continued fraction failed to converge");
    }
    h = a1 * h;
    const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
    const double k1 = k0 * (x + 0.5 - h) / x;
    return {k0, k1};
}

} // namespace

double bessel_k(int n, double x)
{
    if (n < 0 || n > 2) {
        throw DomainError("bessel_k: order must be 0, 1 or 2");
    }
    if (!(x > 0.0) || std::isnan(x)) {
        throw DomainError("bessel_k: argument must be positive");
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    const auto [k0, k1] = x < 2.0 ? k01_series(x) : k01_continued_fraction(x);
    switch (n) {
    case 0:
        return k0;
    case 1:
        return k1;
    default:
        return k0 + (2.0 / x) * k1;
    }
}

} // namespace lindgain::special
