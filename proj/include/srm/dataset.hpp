#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "srm/error.hpp"
#include "srm/text.hpp"

namespace srm {

enum class Family { binary, count, continuous };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::binary: return "binary";
    case Family::count: return "count";
    case Family::continuous: return "continuous";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  if (s == "binary") return Family::binary;
  if (s == "count") return Family::count;
  if (s == "continuous") return Family::continuous;
  throw Error(errc::config, "unknown family: " + s);
}

// Column-name map for long-format input files.
struct DatasetSchema {
  std::string actor_col = "i_ID";
  std::string partner_col = "j_ID";
  std::string dyad_col = "ij_ID";
  std::string response_col = "y";
  std::optional<std::string> group_col;
  std::optional<std::string> offset_col;
  std::vector<std::string> covariate_cols = {"cons"};
};

// One directed observation, with labels interned to dense indices.
struct ObservationRow {
  int actor = -1;
  int partner = -1;
  int dyad = -1;
  int group = -1;  // -1 when the dataset is ungrouped
  double response = 0.0;
  double log_offset = 0.0;
  bool has_offset = false;
};

// Row positions carrying one symmetric dyad label. node_a/node_b is the
// unordered pair as first seen; row_ij is the direction actor==node_a.
struct DyadInfo {
  int node_a = -1;
  int node_b = -1;
  int row_ij = -1;
  int row_ji = -1;
  std::vector<int> all_rows;  // every row with this label, for validation
};

class DyadicDataset {
 public:
  std::vector<ObservationRow> rows;
  std::vector<double> covariates;  // n_rows x n_covariates, row-major
  std::vector<std::string> covariate_names;
  std::vector<std::string> node_labels;
  std::vector<std::string> dyad_labels;
  std::vector<std::string> group_labels;
  std::vector<DyadInfo> dyads;
  DatasetSchema schema;
  bool has_offset = false;

  int n_rows() const { return static_cast<int>(rows.size()); }
  int n_nodes() const { return static_cast<int>(node_labels.size()); }
  int n_dyads() const { return static_cast<int>(dyads.size()); }
  int n_groups() const { return static_cast<int>(group_labels.size()); }
  int n_covariates() const { return static_cast<int>(covariate_names.size()); }
  bool grouped() const { return !group_labels.empty(); }

  double covariate(int row, int col) const {
    return covariates[static_cast<size_t>(row) * covariate_names.size() + col];
  }
};

namespace detail {

class LabelInterner {
 public:
  int intern(const std::string& label, std::vector<std::string>& table) {
    auto it = map_.find(label);
    if (it != map_.end()) return it->second;
    int id = static_cast<int>(table.size());
    table.push_back(label);
    map_.emplace(label, id);
    return id;
  }

 private:
  std::unordered_map<std::string, int> map_;
};

}  // namespace detail

// Builds the dyad index over already-interned rows. Rows beyond the second
// per label are kept in all_rows so validation can report them.
inline void index_dyads(DyadicDataset& ds) {
  ds.dyads.clear();
  ds.dyads.resize(ds.dyad_labels.size());
  for (int r = 0; r < ds.n_rows(); ++r) {
    const auto& row = ds.rows[r];
    DyadInfo& d = ds.dyads[row.dyad];
    if (d.all_rows.empty()) {
      d.node_a = row.actor;
      d.node_b = row.partner;
      d.row_ij = r;
    } else if (d.row_ji < 0 && row.actor == d.node_b && row.partner == d.node_a) {
      d.row_ji = r;
    }
    d.all_rows.push_back(r);
  }
}

inline DyadicDataset load_dataset(const std::string& path, const DatasetSchema& schema) {
  auto lines = read_lines(path);
  if (lines.empty()) throw Error(errc::empty_dataset, "file has no header row: " + path);

  const auto header = split_csv_line(lines[0]);
  std::unordered_map<std::string, int> col_of;
  for (int i = 0; i < static_cast<int>(header.size()); ++i) col_of[trim(header[i])] = i;

  auto require_col = [&](const std::string& name) {
    auto it = col_of.find(name);
    if (it == col_of.end())
      throw Error(errc::schema, "missing column '" + name + "' in " + path);
    return it->second;
  };

  const int c_actor = require_col(schema.actor_col);
  const int c_partner = require_col(schema.partner_col);
  const int c_dyad = require_col(schema.dyad_col);
  const int c_response = require_col(schema.response_col);
  const int c_group = schema.group_col ? require_col(*schema.group_col) : -1;
  const int c_offset = schema.offset_col ? require_col(*schema.offset_col) : -1;
  std::vector<int> c_cov;
  for (const auto& name : schema.covariate_cols) c_cov.push_back(require_col(name));

  DyadicDataset ds;
  ds.schema = schema;
  ds.covariate_names = schema.covariate_cols;
  ds.has_offset = c_offset >= 0;

  detail::LabelInterner nodes, dyad_ids, groups;
  const size_t ncov = c_cov.size();

  for (size_t li = 1; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    const auto cells = split_csv_line(lines[li]);
    const int line_no = static_cast<int>(li) + 1;
    auto cell = [&](int c) -> const std::string& {
      if (c >= static_cast<int>(cells.size()))
        throw Error(errc::parse, "row " + std::to_string(line_no) + ": too few columns");
      return cells[c];
    };
    auto numeric = [&](int c, const std::string& what) {
      double v;
      if (!try_parse_double(cell(c), v))
        throw Error(errc::parse, "row " + std::to_string(line_no) + ": non-numeric " +
                                     what + " '" + cell(c) + "'");
      return v;
    };

    ObservationRow row;
    row.actor = nodes.intern(trim(cell(c_actor)), ds.node_labels);
    row.partner = nodes.intern(trim(cell(c_partner)), ds.node_labels);
    row.dyad = dyad_ids.intern(trim(cell(c_dyad)), ds.dyad_labels);
    if (c_group >= 0) row.group = groups.intern(trim(cell(c_group)), ds.group_labels);
    row.response = numeric(c_response, "response");
    if (c_offset >= 0) {
      row.log_offset = numeric(c_offset, "offset");
      row.has_offset = true;
    }
    for (size_t k = 0; k < ncov; ++k)
      ds.covariates.push_back(numeric(c_cov[k], "covariate " + schema.covariate_cols[k]));
    ds.rows.push_back(row);
  }

  if (ds.rows.empty()) throw Error(errc::empty_dataset, "no data rows in " + path);
  index_dyads(ds);
  return ds;
}

// Serializes back to the CSV layout load_dataset reads; all numeric values
// round-trip exactly.
inline void write_dataset(const DyadicDataset& ds, const std::string& path) {
  std::string out;
  const auto& s = ds.schema;
  out += s.actor_col + "," + s.partner_col + "," + s.dyad_col;
  if (s.group_col) out += "," + *s.group_col;
  out += "," + s.response_col;
  for (const auto& c : ds.covariate_names) out += "," + c;
  if (s.offset_col) out += "," + *s.offset_col;
  out += "\n";
  for (int r = 0; r < ds.n_rows(); ++r) {
    const auto& row = ds.rows[r];
    out += ds.node_labels[row.actor] + "," + ds.node_labels[row.partner] + "," +
           ds.dyad_labels[row.dyad];
    if (s.group_col) out += "," + ds.group_labels[row.group];
    out += "," + format_double(row.response);
    for (int k = 0; k < ds.n_covariates(); ++k)
      out += "," + format_double(ds.covariate(r, k));
    if (s.offset_col) out += "," + format_double(row.log_offset);
    out += "\n";
  }
  write_text_file(path, out);
}

struct Violation {
  std::string kind;
  int row;  // 1-based data row (header = line 1), 0 for dataset-level findings
  std::string message;
  bool fatal = true;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has_fatal() const {
    return std::any_of(violations.begin(), violations.end(),
                       [](const Violation& v) { return v.fatal; });
  }
  std::string to_text() const {
    std::string out;
    for (const auto& v : violations)
      out += v.kind + "," + std::to_string(v.row) + "," + v.message + "\n";
    return out;
  }
};

inline ValidationReport validate(const DyadicDataset& ds, Family family) {
  ValidationReport rep;
  auto add = [&](const std::string& kind, int row, const std::string& msg, bool fatal = true) {
    rep.violations.push_back({kind, row, msg, fatal});
  };
  auto data_row = [](int r) { return r + 2; };  // file line number of row r

  std::map<std::pair<int, int>, int> seen_ordered;
  for (int r = 0; r < ds.n_rows(); ++r) {
    const auto& row = ds.rows[r];
    if (row.actor == row.partner)
      add("self-tie", data_row(r),
          "actor equals partner '" + ds.node_labels[row.actor] + "'");
    auto key = std::make_pair(row.actor, row.partner);
    auto it = seen_ordered.find(key);
    if (it != seen_ordered.end())
      add("duplicate-ordered-pair", data_row(r),
          "direction " + ds.node_labels[row.actor] + "->" + ds.node_labels[row.partner] +
              " already present at row " + std::to_string(it->second));
    else
      seen_ordered.emplace(key, data_row(r));

    const DyadInfo& d = ds.dyads[row.dyad];
    const bool matches_pair =
        (row.actor == d.node_a && row.partner == d.node_b) ||
        (row.actor == d.node_b && row.partner == d.node_a);
    if (!matches_pair)
      add("dyad-pair-mismatch", data_row(r),
          "dyad '" + ds.dyad_labels[row.dyad] + "' is between '" +
              ds.node_labels[d.node_a] + "' and '" + ds.node_labels[d.node_b] + "'");

    if (ds.grouped() && row.group != ds.rows[d.all_rows.front()].group)
      add("group-mismatch", data_row(r),
          "dyad '" + ds.dyad_labels[row.dyad] + "' spans two group labels");

    if (family == Family::binary && row.response != 0.0 && row.response != 1.0)
      add("non-binary-response", data_row(r),
          "response " + format_double(row.response) + " not in {0,1}");
    if (family == Family::count &&
        (row.response < 0.0 || row.response != std::floor(row.response) ||
         !std::isfinite(row.response)))
      add("non-count-response", data_row(r),
          "response " + format_double(row.response) + " is not a non-negative integer");
    if (row.has_offset && !std::isfinite(row.log_offset))
      add("non-finite-offset", data_row(r), "offset is not finite");
    for (int k = 0; k < ds.n_covariates(); ++k)
      if (!std::isfinite(ds.covariate(r, k)))
        add("non-finite-covariate", data_row(r),
            "covariate '" + ds.covariate_names[k] + "' is not finite");
    if (family == Family::continuous && !std::isfinite(row.response))
      add("non-finite-response", data_row(r), "response is not finite");
  }

  for (int d = 0; d < ds.n_dyads(); ++d)
    if (ds.dyads[d].all_rows.size() > 2)
      add("dyad-overfull", 0,
          "dyad '" + ds.dyad_labels[d] + "' has " +
              std::to_string(ds.dyads[d].all_rows.size()) + " rows");

  if (ds.has_offset && family != Family::count)
    add("offset-ignored", 0,
        "offset column present but family is " + std::string(family_name(family)),
        /*fatal=*/false);

  return rep;
}

}  // namespace srm
