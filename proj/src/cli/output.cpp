#include "lindgain/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lindgain/cli/config.hpp"

namespace lindgain::cli {

const char* const kTwoLevelTrajectoryHeader =
    "t,rho_gg,rho_ee,re_rho_ge,im_rho_ge,trace,min_eigenvalue";
const char* const kVShapedTrajectoryHeader =
    "t,rho_gg,rho_e1e1,rho_e2e2,re_rho_e1e2,im_rho_e1e2,trace,min_eigenvalue";

std::string format_number(double x)
{
    if (x == 0.0) {
        x = 0.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.11e", x);
    return buf;
}

void ensure_directory(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir.string() + "'" +
                      (ec ? ": " + ec.message() : std::string()));
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << contents;
    out.close();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

std::string trajectory_csv(const master::Trajectory& traj)
{
    std::ostringstream csv;
    const bool two_level = !traj.states.empty() && traj.states.front().levels() == 2;
    csv << (two_level ? kTwoLevelTrajectoryHeader : kVShapedTrajectoryHeader) << '\n';
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const auto& rho = traj.states[k];
        std::vector<double> row{traj.times[k]};
        if (two_level) {
            row.insert(row.end(), {rho(0, 0).real(), rho(1, 1).real(), rho(0, 1).real(),
                                   rho(0, 1).imag()});
        } else {
            row.insert(row.end(), {rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real(),
                                   rho(1, 2).real(), rho(1, 2).imag()});
        }
        row.push_back(rho.trace());
        row.push_back(rho.min_eigenvalue());
        for (std::size_t c = 0; c < row.size(); ++c) {
            csv << (c ? "," : "") << format_number(row[c]);
        }
        csv << '\n';
    }
    return csv.str();
}

namespace {

std::string escape_xml(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string fixed(double v, int digits = 2)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::string tick_label(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

} // namespace

std::string render_svg(const LinePlot& plot)
{
    constexpr double width = 720.0;
    constexpr double height = 440.0;
    constexpr double left = 70.0;
    constexpr double right = 150.0;
    constexpr double top = 40.0;
    constexpr double bottom = 60.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    auto xmap = [&](double x) { return plot.log_x ? std::log10(x) : x; };

    double x_lo = 0.0, x_hi = 1.0;
    if (!plot.x.empty()) {
        x_lo = xmap(*std::min_element(plot.x.begin(), plot.x.end()));
        x_hi = xmap(*std::max_element(plot.x.begin(), plot.x.end()));
    }
    if (x_hi <= x_lo) {
        x_hi = x_lo + 1.0;
    }
    double y_lo = 0.0, y_hi = 1.0;
    for (const auto& s : plot.series) {
        for (double y : s.y) {
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    }
    auto px = [&](double x) { return left + (xmap(x) - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return top + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-size=\"15\">" << escape_xml(plot.title) << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
        << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double fx = x_lo + (x_hi - x_lo) * i / 5.0;
        const double xv = plot.log_x ? std::pow(10.0, fx) : fx;
        const double sx = left + plot_w * i / 5.0;
        svg << "<line x1=\"" << fixed(sx) << "\" y1=\"" << top + plot_h << "\" x2=\"" << fixed(sx)
            << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fixed(sx) << "\" y=\"" << top + plot_h + 18
            << "\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n";
        const double yv = y_lo + (y_hi - y_lo) * i / 5.0;
        const double sy = py(yv);
        svg << "<line x1=\"" << left - 5 << "\" y1=\"" << fixed(sy) << "\" x2=\"" << left
            << "\" y2=\"" << fixed(sy) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << left - 8 << "\" y=\"" << fixed(sy + 4)
            << "\" text-anchor=\"end\">" << tick_label(yv) << "</text>\n";
    }
    svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
        << "\" text-anchor=\"middle\">" << escape_xml(plot.x_label) << "</text>\n";
    svg << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 18 " << top + plot_h / 2 << ")\">"
        << escape_xml(plot.y_label) << "</text>\n";

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& s = plot.series[k];
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\"";
        if (s.dashed) {
            svg << " stroke-dasharray=\"6 4\"";
        }
        svg << " points=\"";
        const std::size_t n = std::min(s.y.size(), plot.x.size());
        for (std::size_t i = 0; i < n; ++i) {
            svg << (i ? " " : "") << fixed(px(plot.x[i])) << "," << fixed(py(s.y[i]));
        }
        svg << "\"/>\n";
        const double ly = top + 20 + 20.0 * k;
        svg << "<line x1=\"" << left + plot_w + 12 << "\" y1=\"" << ly << "\" x2=\""
            << left + plot_w + 40 << "\" y2=\"" << ly << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
        svg << "<text x=\"" << left + plot_w + 46 << "\" y=\"" << ly + 4 << "\">"
            << escape_xml(s.label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

LinePlot population_plot(const master::Trajectory& traj, const std::string& title)
{
    LinePlot plot;
    plot.title = title;
    plot.x_label = "time (1/omega_a)";
    plot.y_label = "population";
    plot.x = traj.times;
    const int levels = traj.states.empty() ? 0 : traj.states.front().levels();
    const auto labels = master::level_labels(levels == 0 ? 3 : levels);
    static const char* colors[] = {"#2ca02c", "#1f77b4", "#1f77b4"};
    for (int i = 0; i < levels; ++i) {
        PlotSeries s;
        s.label = "rho_" + labels[i] + labels[i];
        s.color = colors[i];
        s.dashed = i == 2;
        for (const auto& rho : traj.states) {
            s.y.push_back(rho.population(i));
        }
        plot.series.push_back(std::move(s));
    }
    return plot;
}

} // namespace lindgain::cli
