#pragma once

#include <string>
#include <vector>

#include "cknn/geometry.hpp"

namespace cknn {

/// Headerless CSV, one point per row. Blank lines are skipped.
PointCloud read_points_csv(const std::string& path);
void write_points_csv(const std::string& path, const PointCloud& cloud);

std::string format_double(double v);  // %.17g, "inf"/"-inf" for infinities

std::vector<double> read_values_csv(const std::string& path);  // one value per row
void write_values_csv(const std::string& path, const std::vector<double>& v);

std::vector<int> read_labels_csv(const std::string& path);
void write_labels_csv(const std::string& path, const std::vector<int>& labels);

}  // namespace cknn
