#include "gramdet/gram.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <thread>
#include <unordered_map>

#include "gramdet/error.hpp"
#include "gramdet/pairing.hpp"
#include "parallel.hpp"

namespace gramdet {

namespace {

constexpr std::pair<Form, std::string_view> kForms[] = {
    {Form::A, "A"}, {Form::Agen, "Agen"}, {Form::B, "B"}, {Form::Mb, "Mb"}, {Form::Mb1, "Mb1"}, {Form::MbN1, "MbN1"},
};

std::string lower(std::string_view s) {
  std::string r(s);
  for (char& c : r) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return r;
}

}  // namespace

unsigned resolve_jobs(unsigned jobs) {
  if (jobs) return jobs;
  unsigned h = std::thread::hardware_concurrency();
  return h ? h : 1;
}

std::string_view form_name(Form f) {
  for (const auto& [form, name] : kForms)
    if (form == f) return name;
  return "?";
}

Form form_from_name(std::string_view name) {
  std::string l = lower(name);
  for (const auto& [form, n] : kForms)
    if (lower(n) == l) return form;
  throw Error("unknown form '" + std::string(name) + "'");
}

BasisKind basis_kind(Form f) {
  switch (f) {
    case Form::A:
    case Form::Agen: return BasisKind::Disk;
    case Form::B: return BasisKind::Annulus;
    case Form::Mb: return BasisKind::MobiusAll;
    case Form::Mb1: return BasisKind::Mb1;
    case Form::MbN1: return BasisKind::MobiusK;
  }
  return BasisKind::Disk;
}

std::string substitution_text(const Substitution& s) {
  std::string out;
  for (const auto& [v, p] : s) {
    if (!out.empty()) out += ",";
    out += var_name(v);
    out += "=" + p.to_string();
  }
  return out;
}

Substitution parse_substitution(std::string_view text) {
  Substitution s;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    std::size_t eq = item.find('=');
    if (eq != 1 || !var_from_name(item[0])) throw ParseError("expected <var>=<polynomial>", start);
    s[*var_from_name(item[0])] = parse_poly(item.substr(2));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return s;
}

std::string Provenance::describe() const {
  std::string s = form + " n=" + std::to_string(n);
  if (!substitution.empty()) s += " [" + substitution_text(substitution) + "]";
  return s;
}

Polynomial pair(Form form, const Diagram& a, const Diagram& b) {
  switch (form) {
    case Form::A: return pair_disk(std::get<DiskDiagram>(a), std::get<DiskDiagram>(b));
    case Form::Agen: return pair_trace(std::get<DiskDiagram>(a), std::get<DiskDiagram>(b));
    case Form::B: return pair_annular(std::get<AnnularDiagram>(a), std::get<AnnularDiagram>(b));
    case Form::Mb:
    case Form::Mb1:
    case Form::MbN1: return pair_mobius(std::get<MobiusDiagram>(a), std::get<MobiusDiagram>(b));
  }
  throw Error("unknown form");
}

GramMatrix build_gram(Form form, int n, const BuildOptions& options) {
  BasisSet basis = enumerate(basis_kind(form), n, 1, options.limits);
  GramMatrix g;
  g.basis = std::move(basis.elements);
  g.entries = PolyMatrix(g.basis.size());
  g.provenance = {std::string(form_name(form)), n, {}};
  detail::parallel_for(g.basis.size(), resolve_jobs(options.jobs), [&](std::size_t i) {
    for (std::size_t j = 0; j < g.basis.size(); ++j) g.entries.at(i, j) = pair(form, g.basis[i], g.basis[j]);
  });
  return g;
}

PolyMatrix substitute(const PolyMatrix& m, const Substitution& s) {
  PolyMatrix r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r.at(i, j) = substitute(m.at(i, j), s);
  return r;
}

GramMatrix substitute(const GramMatrix& g, const Substitution& s) {
  GramMatrix r{g.basis, substitute(g.entries, s), g.provenance};
  for (const auto& [v, p] : s) r.provenance.substitution[v] = p;
  return r;
}

GramMatrix direct_sum(const GramMatrix& a, const GramMatrix& b) {
  GramMatrix r;
  r.basis = a.basis;
  r.basis.insert(r.basis.end(), b.basis.begin(), b.basis.end());
  const std::size_t na = a.dim(), nb = b.dim();
  r.entries = PolyMatrix(na + nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) r.entries.at(i, j) = a.entries.at(i, j);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) r.entries.at(na + i, na + j) = b.entries.at(i, j);
  r.provenance.form = "sum(" + a.provenance.describe() + "; " + b.provenance.describe() + ")";
  r.provenance.n = std::max(a.provenance.n, b.provenance.n);
  return r;
}

Substitution tilde_substitution() { return {{Var::y, Polynomial(0)}, {Var::w, Polynomial(1)}}; }

std::vector<std::string> entry_multiset(const PolyMatrix& m) {
  std::vector<std::string> out;
  for (const auto& p : m.data()) out.push_back(p.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

PolyMatrix swap_xy(const PolyMatrix& m) {
  PolyMatrix r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r.at(i, j) = swap_xy(m.at(i, j));
  return r;
}

PolyMatrix transpose(const PolyMatrix& m) {
  PolyMatrix r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r.at(j, i) = m.at(i, j);
  return r;
}

PolyMatrix permute(const PolyMatrix& m, const std::vector<std::size_t>& perm) {
  PolyMatrix r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r.at(i, j) = m.at(perm[i], perm[j]);
  return r;
}

std::optional<std::vector<std::size_t>> match_up_to_permutation(const PolyMatrix& a, const PolyMatrix& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n) return std::nullopt;
  std::unordered_map<std::string, int> ids;
  auto encode = [&](const PolyMatrix& m) {
    std::vector<int> out(n * n);
    for (std::size_t i = 0; i < n * n; ++i) out[i] = ids.try_emplace(m.data()[i].to_string(), static_cast<int>(ids.size())).first->second;
    return out;
  };
  std::vector<int> ea = encode(a), eb = encode(b);
  // Row signature: diagonal entry plus sorted row and column multisets.
  auto signature = [n](const std::vector<int>& e, std::size_t i) {
    std::vector<int> row, col;
    for (std::size_t j = 0; j < n; ++j) {
      row.push_back(e[i * n + j]);
      col.push_back(e[j * n + i]);
    }
    std::sort(row.begin(), row.end());
    std::sort(col.begin(), col.end());
    row.push_back(-1);
    row.push_back(e[i * n + i]);
    row.insert(row.end(), col.begin(), col.end());
    return row;
  };
  std::vector<std::vector<int>> sa(n), sb(n);
  for (std::size_t i = 0; i < n; ++i) {
    sa[i] = signature(ea, i);
    sb[i] = signature(eb, i);
  }
  std::vector<std::size_t> perm(n);
  std::vector<char> used(n, 0);
  std::size_t budget = 5'000'000;
  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || sa[c] != sb[i]) continue;
      if (budget-- == 0) return false;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = ea[c * n + perm[j]] == eb[i * n + j] && ea[perm[j] * n + c] == eb[j * n + i];
      if (!ok) continue;
      perm[i] = c;
      used[c] = 1;
      if (place(i + 1)) return true;
      used[c] = 0;
    }
    return false;
  };
  if (place(0)) return perm;
  return std::nullopt;
}

}  // namespace gramdet
