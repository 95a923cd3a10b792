#include "gramdet/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "gramdet/error.hpp"

namespace gramdet {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << text;
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

json entries_json(const PolyMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m.at(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

PolyMatrix entries_from_json(const json& rows) {
  PolyMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw Error("matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = parse_poly(rows[i][j].get<std::string>());
  }
  return m;
}

std::string escape_latex_label(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '{' || c == '}' || c == '_' || c == '&' || c == '%' || c == '#' || c == '$') out += '\\';
    out += c;
  }
  return out;
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

}  // namespace

std::string_view basis_kind_name(BasisKind k) {
  switch (k) {
    case BasisKind::Disk: return "disk";
    case BasisKind::Annulus: return "annulus";
    case BasisKind::MobiusAll:
    case BasisKind::MobiusK: return "mobius";
    case BasisKind::Mb1: return "mb1";
  }
  return "?";
}

BasisKind basis_kind_from_name(std::string_view name) {
  if (name == "disk") return BasisKind::Disk;
  if (name == "annulus") return BasisKind::Annulus;
  if (name == "mobius") return BasisKind::MobiusAll;
  if (name == "mb1") return BasisKind::Mb1;
  throw Error("unknown basis kind '" + std::string(name) + "'");
}

std::string basis_text(const BasisSet& b) {
  std::string out;
  for (const auto& d : b.elements) out += serialize(d) + "\n";
  return out;
}

std::string basis_json(const BasisSet& b) {
  json j;
  j["kind"] = basis_kind_name(b.kind);
  j["n"] = b.n;
  if (b.kind == BasisKind::MobiusK) j["k"] = b.k;
  j["count"] = b.size();
  json el = json::array();
  for (const auto& d : b.elements) el.push_back(serialize(d));
  j["elements"] = std::move(el);
  return j.dump(1) + "\n";
}

std::string matrix_json(const GramMatrix& g) {
  json j;
  j["form"] = g.provenance.form;
  j["n"] = g.provenance.n;
  if (!g.provenance.substitution.empty()) j["substitution"] = substitution_text(g.provenance.substitution);
  json basis = json::array();
  for (const auto& d : g.basis) basis.push_back(serialize(d));
  j["basis"] = std::move(basis);
  j["entries"] = entries_json(g.entries);
  return j.dump(1) + "\n";
}

GramMatrix matrix_from_json(const std::string& text) {
  json j = json::parse(text);
  GramMatrix g;
  g.provenance.form = j.at("form").get<std::string>();
  g.provenance.n = j.at("n").get<int>();
  if (j.contains("substitution")) g.provenance.substitution = parse_substitution(j["substitution"].get<std::string>());
  for (const auto& d : j.at("basis")) g.basis.push_back(parse_diagram(d.get<std::string>()));
  g.entries = entries_from_json(j.at("entries"));
  if (g.basis.size() != g.entries.dim()) throw Error("basis and entries disagree in size");
  return g;
}

std::string matrix_csv(const GramMatrix& g) {
  std::string out = "\"\"";
  for (const auto& d : g.basis) out += ",\"" + serialize(d) + "\"";
  out += "\n";
  for (std::size_t i = 0; i < g.dim(); ++i) {
    out += "\"" + serialize(g.basis[i]) + "\"";
    for (std::size_t j = 0; j < g.dim(); ++j) out += "," + g.entries.at(i, j).to_string();
    out += "\n";
  }
  return out;
}

std::string poly_latex(const Polynomial& p) {
  std::string s = p.to_string(), out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '*') continue;
    if (s[i] == '^') {
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out += "^{" + s.substr(i + 1, j - i - 1) + "}";
      i = j - 1;
      continue;
    }
    out += s[i];
  }
  return out;
}

std::string matrix_latex(const GramMatrix& g) {
  const std::size_t n = g.dim();
  std::string out = "\\begin{tabular}{c|" + std::string(n, 'c') + "}\n";
  for (std::size_t j = 0; j < n; ++j) out += " & \\texttt{" + escape_latex_label(serialize(g.basis[j])) + "}";
  out += " \\\\ \\hline\n";
  for (std::size_t i = 0; i < n; ++i) {
    out += "\\texttt{" + escape_latex_label(serialize(g.basis[i])) + "}";
    for (std::size_t j = 0; j < n; ++j) out += " & $" + poly_latex(g.entries.at(i, j)) + "$";
    out += " \\\\\n";
  }
  out += "\\end{tabular}\n";
  return out;
}

std::string report_json(const ClaimReport& r) {
  json j;
  j["claim"] = claim_name(r.claim);
  j["kind"] = is_conjecture(r.claim) ? "conjecture" : "theorem";
  j["n"] = r.n;
  j["method"] = r.method;
  j["verdict"] = verdict_name(r.verdict);
  j["witness"] = r.witness.empty() ? json(nullptr) : json(r.witness);
  j["value"] = r.value.empty() ? json(nullptr) : json(r.value);
  j["value_terms"] = r.value_terms;
  j["detail"] = r.detail;
  j["wall_time_s"] = std::round(r.wall_time * 1000) / 1000;
  j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  j["trials"] = r.trials;
  j["prime"] = r.prime ? json(r.prime) : json(nullptr);
  if (!r.failure_bound_log2)
    j["failure_bound_log2"] = nullptr;
  else if (std::isinf(*r.failure_bound_log2))
    j["failure_bound_log2"] = "-inf";
  else
    j["failure_bound_log2"] = *r.failure_bound_log2;
  return j.dump(1) + "\n";
}

std::string det_result_json(const DetResult& r, const Provenance& p, std::string_view method) {
  json j;
  j["form"] = p.form;
  j["n"] = p.n;
  if (!p.substitution.empty()) j["substitution"] = substitution_text(p.substitution);
  j["method"] = method;
  j["verdict"] = r.verdict == DetResult::Agree ? "agree" : r.verdict == DetResult::Disagree ? "disagree" : "inconclusive";
  j["field"] = r.field;
  j["prime"] = r.prime ? json(r.prime) : json(nullptr);
  j["seed"] = r.field == "Z" ? json(nullptr) : json(r.seed);
  j["trials"] = r.trials;
  j["points_checked"] = r.points_checked;
  j["degree_bound"] = r.degree_bound;
  if (r.field == "Z")
    j["failure_bound_log2"] = nullptr;
  else if (std::isinf(r.failure_bound_log2))
    j["failure_bound_log2"] = "-inf";
  else
    j["failure_bound_log2"] = r.failure_bound_log2;
  j["failing_point"] = r.failing_point.empty() ? json(nullptr) : json(r.failing_point.front());
  j["note"] = r.note;
  return j.dump(1) + "\n";
}

Fixture load_fixture(const std::filesystem::path& path) {
  json j = json::parse(read_file(path));
  Fixture f;
  f.form = j.at("form").get<std::string>();
  f.n = j.at("n").get<int>();
  if (j.contains("substitution"))
    for (const auto& [k, v] : j["substitution"].items()) {
      auto var = k.size() == 1 ? var_from_name(k[0]) : std::nullopt;
      if (!var) throw Error("bad substitution variable '" + k + "' in " + path.string());
      f.substitution[*var] = parse_poly(v.get<std::string>());
    }
  if (j.contains("labels")) f.labels = j["labels"].get<std::vector<std::string>>();
  if (j.contains("basis")) f.basis = j["basis"].get<std::vector<std::string>>();
  f.rows = entries_from_json(j.at("rows"));
  if (j.at("dim").get<std::size_t>() != f.rows.dim()) throw Error("dim field disagrees with rows in " + path.string());
  return f;
}

Cache Cache::resolve(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return Cache(explicit_dir);
  if (const char* env = std::getenv("GRAMDET_CACHE_DIR"); env && *env) return Cache(env);
  return Cache();
}

std::filesystem::path Cache::path_for(std::string_view kind, Form form, int n, const Substitution& s) const {
  std::string name = std::string(kind) + "-" + std::string(form_name(form)) + "-n" + std::to_string(n);
  if (!s.empty()) name += "-" + sanitize(substitution_text(s));
  return dir_ / (name + ".json");
}

std::optional<GramMatrix> Cache::load_matrix(Form form, int n, const Substitution& s) const {
  if (!enabled()) return std::nullopt;
  auto path = path_for("matrix", form, n, s);
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    json j = json::parse(read_file(path));
    if (j.value("version", 0) != kVersion) return std::nullopt;
    return matrix_from_json(j.at("matrix").dump());
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void Cache::store_matrix(const GramMatrix& g, Form form) const {
  if (!enabled()) return;
  json j;
  j["version"] = kVersion;
  j["kind"] = "matrix";
  j["matrix"] = json::parse(matrix_json(g));
  write_file_atomic(path_for("matrix", form, g.provenance.n, g.provenance.substitution), j.dump() + "\n");
}

std::optional<Polynomial> Cache::load_det(Form form, int n, const Substitution& s) const {
  if (!enabled()) return std::nullopt;
  auto path = path_for("det", form, n, s);
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    json j = json::parse(read_file(path));
    if (j.value("version", 0) != kVersion) return std::nullopt;
    return parse_poly(j.at("det").get<std::string>());
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void Cache::store_det(Form form, int n, const Substitution& s, const Polynomial& det) const {
  if (!enabled()) return;
  json j;
  j["version"] = kVersion;
  j["kind"] = "det";
  j["form"] = form_name(form);
  j["n"] = n;
  j["substitution"] = substitution_text(s);
  j["det"] = det.to_string();
  write_file_atomic(path_for("det", form, n, s), j.dump() + "\n");
}

}  // namespace gramdet
