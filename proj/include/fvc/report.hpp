#pragma once

#include <map>
#include <string>
#include <vector>

#include "fvc/measure.hpp"

namespace fvc {

/// Column order of every CSV this tool produces.
inline constexpr const char* kCsvHeader =
    "filename,segment,polygon_pixels,vegetation_pixels,percent,area_sq_in,"
    "area_sq_cm,daubenmire_class,error";

/// One data row; reals carry 4 decimal places, the error cell is empty.
std::string csv_row(const std::string& filename, const CoverReport& report);

/// Failure row: counts empty, the error column carries the reason.
std::string csv_error_row(const std::string& filename,
                          const std::string& error);

/// Minimal CSV table: header names mapped to per-row cells. Handles
/// double-quoted cells (with "" escapes); no multi-line cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  bool has_column(const std::string& name) const;
  /// Cell by column name; throws std::out_of_range on unknown columns.
  const std::string& cell(std::size_t row, const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

/// The comparison cmd_compare prints: vectors aligned by key, their
/// cosine similarity, and each side's mean and median.
struct CompareStats {
  std::size_t n = 0;
  double cosine = 0.0;
  double mean_ours = 0.0;
  double mean_ref = 0.0;
  double median_ours = 0.0;
  double median_ref = 0.0;
};

/// Aligns the `percent` columns of the two tables by filename (and
/// segment, when both tables carry that column). Throws
/// std::invalid_argument when either table lacks the needed columns or no
/// keys overlap.
CompareStats compare_reports(const CsvTable& ours, const CsvTable& ref);

}  // namespace fvc
