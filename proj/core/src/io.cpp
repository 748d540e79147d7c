#include "cydft/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cydft/transform.hpp"

namespace cydft {

namespace {

std::vector<std::string> tokenize(std::string_view text,
                                  std::string_view extra = "") {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n' ||
        extra.find(ch) != std::string_view::npos) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<std::vector<std::string>> token_rows(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::vector<std::string> row = tokenize(text.substr(start, end - start));
    if (!row.empty()) rows.push_back(std::move(row));
    start = end + 1;
  }
  return rows;
}

}  // namespace

std::string format_vector(const FieldContext& field,
                          std::span<const FieldElement> v, ElementFormat fmt,
                          std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += format_element(field, v[i], fmt);
  }
  return out;
}

std::vector<FieldElement> parse_vector(const FieldContext& field,
                                       std::string_view text) {
  std::vector<FieldElement> out;
  for (const std::string& tok : tokenize(text, ","))
    out.push_back(parse_element(field, tok));
  return out;
}

std::string format_gf2_matrix(const Gf2Matrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ' ';
      out += m.get(r, c) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

Gf2Matrix parse_gf2_matrix(std::string_view text) {
  const auto rows = token_rows(text);
  if (rows.empty()) throw Error(Errc::parse_error, "empty matrix text");
  Gf2Matrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) {
      throw Error(Errc::parse_error,
                  "ragged matrix: row " + std::to_string(r) + " has " +
                      std::to_string(rows[r].size()) + " entries");
    }
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (rows[r][c] == "1") {
        m.set(r, c, true);
      } else if (rows[r][c] != "0") {
        throw Error(Errc::parse_error,
                    "matrix entry '" + rows[r][c] + "' is not 0 or 1");
      }
    }
  }
  return m;
}

std::string format_field_matrix(const FieldContext& field, const FieldMatrix& m,
                                ElementFormat fmt) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ' ';
      out += format_element(field, m.at(r, c), fmt);
    }
    out += '\n';
  }
  return out;
}

FieldMatrix parse_field_matrix(const FieldContext& field,
                               std::string_view text) {
  const auto rows = token_rows(text);
  if (rows.empty()) throw Error(Errc::parse_error, "empty matrix text");
  FieldMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) {
      throw Error(Errc::parse_error,
                  "ragged matrix: row " + std::to_string(r) + " has " +
                      std::to_string(rows[r].size()) + " entries");
    }
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m.at(r, c) = parse_element(field, rows[r][c]);
  }
  return m;
}

std::optional<CellMismatch> compare_matrix_text(std::string_view expected,
                                                std::string_view actual) {
  const auto exp = token_rows(expected);
  const auto act = token_rows(actual);
  const std::size_t rows = std::max(exp.size(), act.size());
  for (std::size_t r = 0; r < rows; ++r) {
    if (r >= exp.size() || r >= act.size()) {
      return CellMismatch{r, 0, r < exp.size() ? exp[r][0] : "<missing row>",
                          r < act.size() ? act[r][0] : "<missing row>"};
    }
    const std::size_t cols = std::max(exp[r].size(), act[r].size());
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string e = c < exp[r].size() ? exp[r][c] : "<missing>";
      const std::string a = c < act[r].size() ? act[r][c] : "<missing>";
      if (e != a) return CellMismatch{r, c, e, a};
    }
  }
  return std::nullopt;
}

std::string plan_to_json(const TransformPlan& plan,
                         const EvalSchedule* schedule) {
  const FieldContext& f = plan.field();
  nlohmann::json doc;
  doc["m"] = f.degree();
  doc["poly"] = format_element(f, FieldElement(f.modulus()), ElementFormat::Hex);
  doc["n"] = f.length();
  doc["ordering"] = ordering_name(plan.structure().ordering());
  doc["z"] = plan.structure().z();

  nlohmann::json cosets = nlohmann::json::array();
  for (const Coset& c : plan.structure().cosets()) cosets.push_back(c.elements);
  doc["cosets"] = cosets;

  nlohmann::json bases;
  for (const auto& [deg, pair] : plan.bases().pairs()) {
    nlohmann::json entry;
    entry["generator"] =
        format_element(f, pair.basis.generator, ElementFormat::Power);
    nlohmann::json elems = nlohmann::json::array();
    for (FieldElement e : pair.basis.elements)
      elems.push_back(format_element(f, e, ElementFormat::Power));
    entry["elements"] = elems;
    nlohmann::json duals = nlohmann::json::array();
    for (FieldElement e : pair.dual.elements)
      duals.push_back(format_element(f, e, ElementFormat::Power));
    entry["dual"] = duals;
    bases[std::to_string(deg)] = entry;
  }
  doc["bases"] = bases;

  doc["matrices"]["A"] = format_gf2_matrix(plan.a());
  doc["matrices"]["A_inv"] = format_gf2_matrix(plan.a_inv());
  doc["matrices"]["L"] =
      format_field_matrix(f, plan.l_matrix(false), ElementFormat::Power);
  doc["matrices"]["L_inv"] =
      format_field_matrix(f, plan.l_matrix(true), ElementFormat::Power);
  doc["matrices"]["Pi"] = format_gf2_matrix(plan.structure().pi_matrix());
  doc["fully_verified"] = plan.fully_verified();
  doc["tag"] = plan.tag();

  if (schedule) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const BlockPlan& b : schedule->forward_blocks) {
      nlohmann::json jb;
      jb["offset"] = b.offset;
      jb["size"] = b.size;
      jb["strategy"] = strategy_name(b.strategy);
      jb["multiplications"] = b.multiplications;
      jb["additions"] = b.additions;
      blocks.push_back(jb);
    }
    doc["schedule"]["blocks"] = blocks;
    doc["schedule"]["a_plan_additions"] = schedule->a_plan.additions();
    doc["schedule"]["multiplications"] = schedule->forward_multiplications();
    doc["schedule"]["additions"] = schedule->forward_additions();
  }
  return doc.dump(2) + "\n";
}

std::string plan_to_text(const TransformPlan& plan) {
  const FieldContext& f = plan.field();
  std::ostringstream out;
  out << "field: GF(2^" << f.degree() << "), modulus "
      << format_element(f, FieldElement(f.modulus()), ElementFormat::Hex)
      << ", n = " << f.length() << "\n";
  out << plan.tag() << "\n\n";

  out << "cosets:\n";
  for (const Coset& c : plan.structure().cosets()) {
    out << "  {";
    for (std::size_t i = 0; i < c.elements.size(); ++i)
      out << (i ? ", " : "") << c.elements[i];
    out << "}\n";
  }
  out << "Z:";
  for (std::uint32_t z : plan.structure().z()) out << " " << z;
  out << "\n\n";

  for (const auto& [deg, pair] : plan.bases().pairs()) {
    out << "basis (degree " << deg << "): "
        << format_vector(f, pair.basis.elements, ElementFormat::Power)
        << "  dual: " << format_vector(f, pair.dual.elements,
                                       ElementFormat::Power)
        << "\n";
  }
  out << "\n";

  out << "A:\n" << format_gf2_matrix(plan.a());
  out << "\nA^-1:\n" << format_gf2_matrix(plan.a_inv());
  out << "\nL:\n"
      << format_field_matrix(f, plan.l_matrix(false), ElementFormat::Power);
  out << "\nL^-1:\n"
      << format_field_matrix(f, plan.l_matrix(true), ElementFormat::Power);
  out << "\nPi:\n" << format_gf2_matrix(plan.structure().pi_matrix());
  out << "\nE:\n" << format_gf2_matrix(plan.structure().e_matrix());
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse_error, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::parse_error, "cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error(Errc::parse_error, "short write to " + path);
}

}  // namespace cydft
