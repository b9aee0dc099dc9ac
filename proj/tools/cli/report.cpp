#include "report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <json.hpp>

namespace ceslab::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(double x) const { return std::isnan(x) ? std::string() : format_double(x); }
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

ordered_json cell_json(const Cell& c) {
  struct Visitor {
    ordered_json operator()(double x) const { return std::isnan(x) ? ordered_json() : ordered_json(x); }
    ordered_json operator()(std::int64_t x) const { return x; }
    ordered_json operator()(const std::string& s) const { return s; }
    ordered_json operator()(bool b) const { return b; }
  };
  return std::visit(Visitor{}, c);
}

std::string render_csv(const Report& r) {
  std::string out;
  const bool titled = r.sections.size() > 1;
  for (std::size_t i = 0; i < r.sections.size(); ++i) {
    const Section& s = r.sections[i];
    if (i > 0) out += '\n';
    if (titled) out += "# " + s.name + '\n';
    for (std::size_t c = 0; c < s.columns.size(); ++c) out += (c ? "," : "") + csv_field(s.columns[c]);
    out += '\n';
    for (const auto& row : s.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + csv_field(cell_text(row[c]));
      out += '\n';
    }
  }
  for (const auto& [k, v] : r.footer) out += "# " + k + "=" + cell_text(v) + '\n';
  return out;
}

std::string render_json(const Report& r) {
  ordered_json doc = ordered_json::object();
  for (const Section& s : r.sections) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : s.rows) {
      ordered_json obj = ordered_json::object();
      for (std::size_t c = 0; c < row.size(); ++c) obj[s.columns[c]] = cell_json(row[c]);
      rows.push_back(std::move(obj));
    }
    doc[s.name] = std::move(rows);
  }
  if (!r.footer.empty()) {
    ordered_json f = ordered_json::object();
    for (const auto& [k, v] : r.footer) f[k] = cell_json(v);
    doc["footer"] = std::move(f);
  }
  return doc.dump(2) + '\n';
}

std::string table_text(const Cell& c) {
  if (const double* x = std::get_if<double>(&c)) {
    if (std::isnan(*x)) return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", *x);
    return buf;
  }
  return cell_text(c);
}

std::string render_table(const Report& r) {
  std::string out;
  for (std::size_t i = 0; i < r.sections.size(); ++i) {
    const Section& s = r.sections[i];
    if (i > 0) out += '\n';
    out += s.name + '\n';
    // Wide single-row sections read better as a key/value list.
    if (s.rows.size() == 1 && s.columns.size() > 4) {
      std::size_t w = 0;
      for (const auto& c : s.columns) w = std::max(w, c.size());
      for (std::size_t c = 0; c < s.columns.size(); ++c)
        out += "  " + s.columns[c] + std::string(w - s.columns[c].size() + 2, ' ') + table_text(s.rows[0][c]) + '\n';
      continue;
    }
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(s.columns.size());
    for (std::size_t c = 0; c < s.columns.size(); ++c) width[c] = s.columns[c].size();
    for (const auto& row : s.rows) {
      cells.emplace_back();
      for (std::size_t c = 0; c < row.size(); ++c) {
        cells.back().push_back(table_text(row[c]));
        width[c] = std::max(width[c], cells.back().back().size());
      }
    }
    auto line = [&](const std::vector<std::string>& v) {
      std::string l = " ";
      for (std::size_t c = 0; c < v.size(); ++c) {
        l += ' ' + v[c];
        if (c + 1 < v.size()) l.append(width[c] - v[c].size() + 1, ' ');
      }
      out += l + '\n';
    };
    line(s.columns);
    for (const auto& row : cells) line(row);
  }
  if (!r.footer.empty()) out += '\n';
  for (const auto& [k, v] : r.footer) out += k + ": " + table_text(v) + '\n';
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string render(const Report& r, Format f) {
  switch (f) {
    case Format::csv:
      return render_csv(r);
    case Format::json:
      return render_json(r);
    case Format::table:
      break;
  }
  return render_table(r);
}

}  // namespace ceslab::cli
