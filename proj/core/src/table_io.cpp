#include "sqpsk/table_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "sqpsk/errors.hpp"

namespace sqpsk {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

// Labels for the column axis: "<axis>-labels" metadata wins (plain labels,
// e.g. the fig3 quantity names), otherwise "name=value" pairs.
std::vector<std::string> column_labels(const ScanTable& table, std::size_t axis) {
  const std::string key = table.axis_names[axis] + "-labels";
  for (const auto& [k, v] : table.metadata) {
    if (k == key) return split(v, ',');
  }
  std::vector<std::string> labels;
  for (double value : table.axis_grids[axis])
    labels.push_back(table.axis_names[axis] + "=" + format_cell(value));
  return labels;
}

}  // namespace

std::string format_cell(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_csv(const ScanTable& table, std::ostream& os) {
  if (table.axis_grids.empty() || table.values.size() != table.expected_size())
    throw DimensionMismatch("scan table values do not match its grids");

  for (const auto& [key, value] : table.metadata)
    os << "# " << key << ": " << value << "\n";

  const std::size_t n_axes = table.axis_names.size();
  // Normalize to (blocks, columns, rows); missing leading axes collapse to
  // a single anonymous block / a single "value" column.
  const bool has_block = n_axes >= 3;
  const bool has_cols = n_axes >= 2;
  const std::size_t row_axis = n_axes - 1;
  const std::size_t n_rows = table.axis_grids[row_axis].size();
  const std::size_t n_cols = has_cols ? table.axis_grids[n_axes - 2].size() : 1;
  const std::size_t n_blocks = has_block ? table.axis_grids[0].size() : 1;

  std::vector<std::string> labels =
      has_cols ? column_labels(table, n_axes - 2) : std::vector<std::string>{"value"};

  for (std::size_t ib = 0; ib < n_blocks; ++ib) {
    if (has_block) {
      os << "# block: " << table.axis_names[0] << "="
         << format_cell(table.axis_grids[0][ib]) << "\n";
    }
    os << table.axis_names[row_axis];
    for (const auto& label : labels) os << ',' << label;
    os << "\n";
    for (std::size_t ir = 0; ir < n_rows; ++ir) {
      os << format_cell(table.axis_grids[row_axis][ir]);
      for (std::size_t ic = 0; ic < n_cols; ++ic) {
        os << ',' << format_cell(table.values[(ib * n_cols + ic) * n_rows + ir]);
      }
      os << "\n";
    }
    if (has_block && ib + 1 < n_blocks) os << "\n";
  }
}

void write_json(const ScanTable& table, std::ostream& os) {
  if (table.axis_grids.empty() || table.values.size() != table.expected_size())
    throw DimensionMismatch("scan table values do not match its grids");

  nlohmann::ordered_json doc;
  doc["axis_names"] = table.axis_names;
  doc["axis_grids"] = table.axis_grids;
  doc["values"] = table.values;  // non-finite values serialize as null
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.metadata) meta[key] = value;
  doc["metadata"] = meta;
  os << doc.dump(2) << "\n";
}

ScanTable read_csv(std::istream& is) {
  ScanTable table;

  struct Block {
    double value = 0.0;                       // block-axis grid value
    std::vector<std::vector<double>> cells;   // [row][col]
    std::vector<double> row_values;
  };
  std::vector<Block> blocks;
  std::string block_axis, row_axis, col_axis;
  std::vector<double> col_values;
  bool have_header = false;
  bool pending_block = false;
  double pending_block_value = 0.0;

  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    if (line.rfind("# block: ", 0) == 0) {
      const std::string spec = line.substr(9);
      const auto eq = spec.find('=');
      if (eq == std::string::npos)
        throw UnknownKind("malformed block line: " + line);
      block_axis = spec.substr(0, eq);
      pending_block_value = std::strtod(spec.c_str() + eq + 1, nullptr);
      pending_block = true;
      have_header = false;  // each block repeats the header
      continue;
    }
    if (line.rfind("# ", 0) == 0) {
      const std::string body = line.substr(2);
      const auto colon = body.find(": ");
      if (colon != std::string::npos)
        table.metadata.emplace_back(body.substr(0, colon), body.substr(colon + 2));
      continue;
    }

    const std::vector<std::string> cells = split(line, ',');
    if (!have_header) {
      row_axis = cells[0];
      if (blocks.empty()) {
        col_values.clear();
        bool named = true;
        for (std::size_t i = 1; i < cells.size(); ++i)
          named = named && cells[i].find('=') != std::string::npos;
        if (named && cells.size() > 1) {
          col_axis = cells[1].substr(0, cells[1].find('='));
          for (std::size_t i = 1; i < cells.size(); ++i)
            col_values.push_back(
                std::strtod(cells[i].c_str() + cells[i].find('=') + 1, nullptr));
        } else {
          // Plain labels (e.g. quantity columns): index grid.
          col_axis = "quantity";
          for (std::size_t i = 1; i < cells.size(); ++i)
            col_values.push_back(double(i - 1));
        }
      }
      blocks.emplace_back();
      blocks.back().value = pending_block_value;
      pending_block = false;
      have_header = true;
      continue;
    }

    Block& block = blocks.back();
    block.row_values.push_back(std::strtod(cells[0].c_str(), nullptr));
    block.cells.emplace_back();
    for (std::size_t i = 1; i < cells.size(); ++i)
      block.cells.back().push_back(std::strtod(cells[i].c_str(), nullptr));
  }
  (void)pending_block;

  if (blocks.empty()) throw UnknownKind("no data rows in CSV input");

  const bool has_block = !block_axis.empty();
  if (has_block) {
    table.axis_names.push_back(block_axis);
    table.axis_grids.emplace_back();
    for (const Block& b : blocks) table.axis_grids.back().push_back(b.value);
  }
  table.axis_names.push_back(col_axis);
  table.axis_grids.push_back(col_values);
  table.axis_names.push_back(row_axis);
  table.axis_grids.push_back(blocks.front().row_values);

  const std::size_t n_cols = col_values.size();
  const std::size_t n_rows = blocks.front().row_values.size();
  table.values.resize(blocks.size() * n_cols * n_rows);
  for (std::size_t ib = 0; ib < blocks.size(); ++ib) {
    const Block& b = blocks[ib];
    if (b.row_values.size() != n_rows)
      throw DimensionMismatch("CSV blocks disagree on row count");
    for (std::size_t ir = 0; ir < n_rows; ++ir) {
      if (b.cells[ir].size() != n_cols)
        throw DimensionMismatch("CSV row has wrong column count");
      for (std::size_t ic = 0; ic < n_cols; ++ic)
        table.values[(ib * n_cols + ic) * n_rows + ir] = b.cells[ir][ic];
    }
  }
  return table;
}

}  // namespace sqpsk
