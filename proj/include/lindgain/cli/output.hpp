#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lindgain/master.hpp"

namespace lindgain::cli {

/// Scientific notation with 12 significant digits; negative zero prints as zero.
std::string format_number(double x);

/// Creates the directory (and parents). Throws IoError on failure.
void ensure_directory(const std::filesystem::path& dir);

/// Writes the whole file or throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

extern const char* const kTwoLevelTrajectoryHeader;
extern const char* const kVShapedTrajectoryHeader;

/// CSV rows for a trajectory, header included. Columns follow the level structure.
std::string trajectory_csv(const master::Trajectory& traj);

struct PlotSeries {
    std::string label;
    std::vector<double> y;
    std::string color;
    bool dashed = false;
};

struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<double> x;
    std::vector<PlotSeries> series;
    bool log_x = false;
};

/// Self-contained SVG line chart.
std::string render_svg(const LinePlot& plot);

/// Population plot of a trajectory.
LinePlot population_plot(const master::Trajectory& traj, const std::string& title);

} // namespace lindgain::cli
