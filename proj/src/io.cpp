#include "cnfscope/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace cnfscope {

std::string format_number(double x) {
  if (std::isnan(x))
    return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

namespace {

std::string trim(std::string s) {
  const auto ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

bool next_line(std::istream &in, std::string &line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (trim(line).empty() || line.front() == '#')
      continue;
    return true;
  }
  return false;
}

double parse_double(const std::string &cell, const std::string &context) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size())
    throw std::invalid_argument(context + ": not a number: '" + cell + "'");
  return value;
}

} // namespace

std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  return cells;
}

void write_feature_csv(std::ostream &out, const std::vector<FeatureRecord> &records) {
  out << kFeatureHeader << '\n';
  for (const auto &rec : records) {
    out << rec.instance << ',' << rec.family.value_or("");
    if (!rec.features) {
      out << ",ERROR,,,,,,,,,\n";
      continue;
    }
    const auto &v = *rec.features;
    out << ',' << format_number(v.alpha) << ',' << format_number(v.q) << ','
        << format_number(v.d) << ',' << format_number(v.d_b) << ','
        << format_number(v.ratio) << ',' << format_number(v.beta) << ','
        << format_number(v.beta_b) << ',' << v.n << ',' << v.m << ',';
    if (v.r_max)
      out << *v.r_max;
    out << '\n';
  }
}

FeatureTable read_feature_csv(std::istream &in) {
  FeatureTable table;
  std::string line;
  if (!next_line(in, line))
    throw std::invalid_argument("feature table is empty");
  const auto header = split_csv_line(line);
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i)
    column[header[i]] = i;
  if (!column.contains("instance"))
    throw std::invalid_argument("feature table has no 'instance' column");

  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    const auto cells = split_csv_line(line);
    auto cell = [&](const std::string &name) -> std::string {
      auto it = column.find(name);
      if (it == column.end() || it->second >= cells.size())
        return "";
      return cells[it->second];
    };
    FeatureRow row;
    row.instance = cell("instance");
    if (row.instance.empty())
      throw std::invalid_argument("feature row " + std::to_string(line_no) +
                                  " has no instance id");
    if (auto fam = cell("family"); !fam.empty())
      row.family = fam;
    bool error = false;
    for (const auto &c : cells)
      if (c == "ERROR")
        error = true;
    if (error) {
      table.warnings.push_back("skipping '" + row.instance + "': feature extraction failed");
      continue;
    }
    for (Feature f : kAllFeatures) {
      const auto name = std::string(feature_name(f));
      const auto text = cell(name);
      if (text.empty()) {
        if (f == Feature::r_max)
          row.features.r_max.reset();
        continue;
      }
      row.features.set(f, parse_double(text, "row '" + row.instance + "' column " + name));
    }
    table.matrix.rows.push_back(std::move(row));
  }
  return table;
}

RuntimeMatrix read_runtime_csv(std::istream &in, double timeout) {
  RuntimeMatrix m;
  m.timeout = timeout;
  std::string line;
  if (!next_line(in, line))
    throw std::invalid_argument("runtime table is empty");
  auto header = split_csv_line(line);
  if (header.empty() || header[0] != "instance")
    throw std::invalid_argument("runtime table must start with an 'instance' column");
  m.solvers.assign(header.begin() + 1, header.end());
  while (next_line(in, line)) {
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw std::invalid_argument("runtime row '" + cells[0] + "' has " +
                                  std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(header.size()));
    m.instances.push_back(cells[0]);
    std::vector<std::optional<double>> row;
    for (std::size_t s = 1; s < cells.size(); ++s) {
      if (cells[s] == "TIMEOUT")
        row.emplace_back();
      else
        row.emplace_back(parse_double(cells[s], "runtime of '" + cells[0] + "'"));
    }
    m.times.push_back(std::move(row));
  }
  m.check();
  return m;
}

void write_runtime_csv(std::ostream &out, const RuntimeMatrix &times) {
  out << "instance";
  for (const auto &s : times.solvers)
    out << ',' << s;
  out << '\n';
  for (std::size_t i = 0; i < times.instances.size(); ++i) {
    out << times.instances[i];
    for (const auto &t : times.times[i])
      out << ',' << (t ? format_number(*t) : std::string("TIMEOUT"));
    out << '\n';
  }
}

std::vector<std::pair<std::string, std::string>> read_labels_csv(std::istream &in) {
  std::vector<std::pair<std::string, std::string>> labels;
  std::string line;
  bool first = true;
  while (next_line(in, line)) {
    const auto cells = split_csv_line(line);
    if (first) {
      first = false;
      if (cells.size() >= 2 && cells[0] == "instance")
        continue;
    }
    if (cells.size() < 2 || cells[1].empty())
      throw std::invalid_argument("label row '" + line + "' needs instance and family");
    labels.emplace_back(cells[0], cells[1]);
  }
  return labels;
}

void write_curve_csv(std::ostream &out, const CoverCurve &curve) {
  out << "r,N,N_norm\n";
  for (int r = 1; r <= curve.r_stop(); ++r)
    out << r << ',' << curve.at(r) << ',' << format_number(curve.normalized(r)) << '\n';
}

void write_histogram_csv(std::ostream &out, const OccurrenceHistogram &h) {
  out << "k,f\n";
  for (const auto &e : h.entries)
    out << e.k << ',' << e.f << '\n';
}

} // namespace cnfscope
