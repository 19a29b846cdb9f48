#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "ghm/point_cloud.hpp"

namespace ghm {

// CSV layout: a header line `# chart=<label> dim=<d>`, then one point per row,
// coordinates comma-separated with 17 significant digits.
void write_cloud_csv(std::ostream& out, const point_cloud& cloud);
point_cloud read_cloud_csv(std::istream& in);

void save_cloud_csv(const std::filesystem::path& path, const point_cloud& cloud);
point_cloud load_cloud_csv(const std::filesystem::path& path);

// JSON layout: {"metadata": {"chart", "dim", "count"}, "points": [[...], ...]}
std::string cloud_to_json(const point_cloud& cloud);
point_cloud cloud_from_json(const std::string& text);

}  // namespace ghm
