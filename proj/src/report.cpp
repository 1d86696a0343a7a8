#include "fvc/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fvc/errors.hpp"

namespace fvc {

namespace {

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// Quote only when the cell would break the format otherwise.
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(std::move(cur));
  return cells;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string csv_row(const std::string& filename, const CoverReport& report) {
  std::ostringstream os;
  os << csv_escape(filename) << ',' << report.segment_index << ','
     << report.polygon_pixels << ',' << report.vegetation_pixels << ','
     << fixed4(report.percent) << ',' << fixed4(report.area_sq_in) << ','
     << fixed4(report.area_sq_cm) << ',' << report.daubenmire_class << ',';
  return os.str();
}

std::string csv_error_row(const std::string& filename,
                          const std::string& error) {
  return csv_escape(filename) + ",,,,,,,," + csv_escape(error);
}

bool CsvTable::has_column(const std::string& name) const {
  return std::find(header.begin(), header.end(), name) != header.end();
}

const std::string& CsvTable::cell(std::size_t row,
                                  const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw std::out_of_range("csv: no column named " + name);
  }
  return rows.at(row).at(static_cast<std::size_t>(it - header.begin()));
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      table.header = split_csv_line(line);
      first = false;
    } else {
      table.rows.push_back(split_csv_line(line));
    }
  }
  if (first) throw IoError("empty csv: " + path);
  return table;
}

CompareStats compare_reports(const CsvTable& ours, const CsvTable& ref) {
  for (const CsvTable* t : {&ours, &ref}) {
    if (!t->has_column("filename") || !t->has_column("percent")) {
      throw std::invalid_argument(
          "compare: both files need filename and percent columns");
    }
  }
  const bool by_segment =
      ours.has_column("segment") && ref.has_column("segment");

  std::map<std::string, double> ref_by_key;
  for (std::size_t i = 0; i < ref.rows.size(); ++i) {
    const std::string& pct = ref.cell(i, "percent");
    if (pct.empty()) continue;  // failed rows carry no value
    std::string key = ref.cell(i, "filename");
    if (by_segment) key += "\x1f" + ref.cell(i, "segment");
    ref_by_key[key] = std::stod(pct);
  }

  std::vector<double> a;
  std::vector<double> b;
  for (std::size_t i = 0; i < ours.rows.size(); ++i) {
    const std::string& pct = ours.cell(i, "percent");
    if (pct.empty()) continue;
    std::string key = ours.cell(i, "filename");
    if (by_segment) key += "\x1f" + ours.cell(i, "segment");
    const auto it = ref_by_key.find(key);
    if (it == ref_by_key.end()) continue;
    a.push_back(std::stod(pct));
    b.push_back(it->second);
  }
  if (a.empty()) {
    throw std::invalid_argument("compare: no overlapping rows");
  }

  CompareStats st;
  st.n = a.size();
  st.cosine = cosine_similarity(a, b);
  for (const double v : a) st.mean_ours += v;
  for (const double v : b) st.mean_ref += v;
  st.mean_ours /= static_cast<double>(a.size());
  st.mean_ref /= static_cast<double>(b.size());
  st.median_ours = median_of(a);
  st.median_ref = median_of(b);
  return st;
}

}  // namespace fvc
