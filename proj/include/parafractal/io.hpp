#pragma once

#include <string>
#include <vector>

namespace parafractal {

/// Shortest 17-significant-digit form; fixed formatting keeps CSV output
/// byte-identical across runs.
std::string g17(double v);

/// Joins fields with commas; no trailing newline.
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace parafractal
