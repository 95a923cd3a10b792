#include "gramdet/diagrams.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "gramdet/error.hpp"

namespace gramdet {

namespace {

Arc ordered(int a, int b) { return a < b ? Arc{a, b} : Arc{b, a}; }

int mirror(int n, int p) { return 2 * n + 1 - p; }

bool interleave(const Arc& e, const Arc& f) {
  auto inside = [&](int p) { return e.first < p && p < e.second; };
  return inside(f.first) != inside(f.second);
}

bool encloses(const Arc& outer, const Arc& inner) {
  return outer.first <= inner.first && inner.second <= outer.second;
}

// Points strictly between s_t and s_{t+1} walking upward, wrapping 2n -> 1.
std::vector<std::vector<int>> gaps(int n, const std::vector<int>& s) {
  std::vector<std::vector<int>> g(s.size());
  const int m = static_cast<int>(s.size());
  for (int t = 0; t < m; ++t) {
    int p = s[t] % (2 * n) + 1;
    while (p != s[(t + 1) % m]) {
      g[t].push_back(p);
      p = p % (2 * n) + 1;
    }
  }
  return g;
}

int gap_of(int n, const std::vector<int>& s, int p) {
  const int m = static_cast<int>(s.size());
  for (int t = 0; t + 1 < m; ++t)
    if (s[t] < p && p < s[t + 1]) return t;
  (void)n;
  return m - 1;
}

std::vector<int> all_points(int n) {
  std::vector<int> pts(2 * n);
  for (int i = 0; i < 2 * n; ++i) pts[i] = i + 1;
  return pts;
}

std::string arcs_text(const std::vector<Arc>& arcs, const std::vector<std::uint8_t>* seam) {
  std::string s;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    s += "(" + std::to_string(arcs[i].first) + "," + std::to_string(arcs[i].second);
    if (seam) s += "|" + std::to_string((*seam)[i]);
    s += ")";
  }
  return s;
}

// Points covered exactly once, all within 1..2n.
bool covers(int n, const std::vector<Arc>& arcs, const std::vector<int>& extra) {
  std::vector<int> seen(2 * n + 1, 0);
  auto mark = [&](int p) {
    if (p < 1 || p > 2 * n) return false;
    return ++seen[p] == 1;
  };
  for (const auto& a : arcs)
    if (a.first >= a.second || !mark(a.first) || !mark(a.second)) return false;
  for (int p : extra)
    if (!mark(p)) return false;
  for (int p = 1; p <= 2 * n; ++p)
    if (seen[p] != 1) return false;
  return true;
}

Validation invalid(InvalidReason r, std::string detail) { return {r, std::move(detail)}; }

Validation check_noncrossing(const std::vector<Arc>& arcs) {
  for (std::size_t i = 0; i < arcs.size(); ++i)
    for (std::size_t j = i + 1; j < arcs.size(); ++j)
      if (interleave(arcs[i], arcs[j]))
        return invalid(InvalidReason::ChordCrossing,
                       "arcs " + arcs_text({arcs[i]}, nullptr) + " and " + arcs_text({arcs[j]}, nullptr) + " interleave");
  return {};
}

void sort_with_bits(std::vector<Arc>& arcs, std::vector<std::uint8_t>& bits) {
  std::vector<std::size_t> idx(arcs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return arcs[a] < arcs[b]; });
  std::vector<Arc> a2;
  std::vector<std::uint8_t> b2;
  for (auto i : idx) {
    a2.push_back(arcs[i]);
    b2.push_back(bits[i]);
  }
  arcs = std::move(a2);
  bits = std::move(b2);
}

// (k, all pairs sorted, side codes) where side is 2 for crosscap arcs and the
// seam bit otherwise.
using Key = std::tuple<int, std::vector<Arc>, std::vector<int>>;

Key key_of(const Diagram& d) {
  return std::visit(
      [](const auto& x) -> Key {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DiskDiagram>) {
          return {0, x.arcs, {}};
        } else if constexpr (std::is_same_v<T, AnnularDiagram>) {
          return {0, x.arcs, std::vector<int>(x.seam.begin(), x.seam.end())};
        } else {
          std::vector<std::pair<Arc, int>> all;
          for (std::size_t i = 0; i < x.flat.size(); ++i) all.push_back({x.flat[i], x.seam[i]});
          for (const auto& c : x.crosscap_arcs()) all.push_back({c, 2});
          std::sort(all.begin(), all.end());
          Key k{x.k(), {}, {}};
          for (auto& [a, s] : all) {
            std::get<1>(k).push_back(a);
            std::get<2>(k).push_back(s);
          }
          return k;
        }
      },
      d);
}

class TextReader {
 public:
  explicit TextReader(std::string_view s) : s_(s) {}
  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  int number() {
    std::size_t start = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 4) throw ParseError("expected point number", start);
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

void read_arcs(TextReader& r, std::vector<Arc>& arcs, std::vector<std::uint8_t>* seam) {
  r.expect('[');
  while (r.accept('(')) {
    int a = r.number();
    r.expect(',');
    int b = r.number();
    if (seam) {
      r.expect('|');
      std::size_t at = r.pos();
      int s = r.number();
      if (s > 1) throw ParseError("seam bit must be 0 or 1", at);
      seam->push_back(static_cast<std::uint8_t>(s));
    }
    r.expect(')');
    arcs.push_back(ordered(a, b));
  }
  r.expect(']');
}

}  // namespace

std::vector<Arc> MobiusDiagram::crosscap_arcs() const {
  std::vector<Arc> out;
  const int kk = k();
  for (int t = 0; t < kk; ++t) out.push_back(ordered(crosscap[t], crosscap[t + kk]));
  return out;
}

std::vector<std::vector<Arc>> noncrossing_matchings(const std::vector<int>& points) {
  std::vector<std::vector<Arc>> out;
  if (points.empty()) {
    out.emplace_back();
    return out;
  }
  if (points.size() % 2) return out;
  const int a = points[0];
  for (std::size_t i = 1; i < points.size(); i += 2) {
    std::vector<int> inner(points.begin() + 1, points.begin() + static_cast<long>(i));
    std::vector<int> outer(points.begin() + static_cast<long>(i) + 1, points.end());
    auto left = noncrossing_matchings(inner);
    auto right = noncrossing_matchings(outer);
    for (const auto& l : left) {
      for (const auto& r : right) {
        std::vector<Arc> m{ordered(a, points[i])};
        m.insert(m.end(), l.begin(), l.end());
        m.insert(m.end(), r.begin(), r.end());
        std::sort(m.begin(), m.end());
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

std::vector<DiskDiagram> enumerate_disk(int n) {
  std::vector<DiskDiagram> out;
  for (auto& m : noncrossing_matchings(all_points(n))) out.push_back({n, std::move(m)});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.arcs < b.arcs; });
  return out;
}

std::vector<AnnularDiagram> enumerate_annular(int n) {
  std::vector<AnnularDiagram> out;
  for (const auto& m : noncrossing_matchings(all_points(n))) {
    out.push_back({n, m, std::vector<std::uint8_t>(m.size(), 0)});
    for (const auto& hole : m) {
      AnnularDiagram a{n, m, {}};
      for (const auto& e : m) a.seam.push_back(encloses(e, hole) ? 1 : 0);
      out.push_back(std::move(a));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return std::tie(a.arcs, a.seam) < std::tie(b.arcs, b.seam); });
  return out;
}

std::vector<std::uint8_t> derived_seam_bits(int n, const std::vector<int>& crosscap, const std::vector<Arc>& flat) {
  std::vector<std::uint8_t> bits;
  if (crosscap.empty()) return bits;
  const int last = crosscap.back();
  for (const auto& e : flat) {
    // Only the wrapping gap can straddle 2n|1; there the walk meets the
    // larger endpoint first.
    bool straddles = e.first < crosscap.front() && e.second > last;
    (void)n;
    bits.push_back(straddles ? 1 : 0);
  }
  return bits;
}

std::vector<MobiusDiagram> enumerate_mobius(int n, int k) {
  std::vector<MobiusDiagram> out;
  if (k == 0) {
    for (auto& a : enumerate_annular(n)) out.push_back(mobius_from_annular(a));
    return out;
  }
  std::vector<int> s;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(s.size()) == 2 * k) {
      auto g = gaps(n, s);
      for (const auto& gap : g)
        if (gap.size() % 2) return;
      std::vector<std::vector<Arc>> partial{{}};
      for (const auto& gap : g) {
        auto local = noncrossing_matchings(gap);
        std::vector<std::vector<Arc>> grown;
        for (const auto& p : partial) {
          for (const auto& l : local) {
            auto q = p;
            q.insert(q.end(), l.begin(), l.end());
            grown.push_back(std::move(q));
          }
        }
        partial = std::move(grown);
      }
      for (auto& f : partial) {
        std::sort(f.begin(), f.end());
        MobiusDiagram m{n, s, f, {}};
        m.seam = derived_seam_bits(n, s, m.flat);
        out.push_back(std::move(m));
      }
      return;
    }
    for (int p = next; p <= 2 * n; ++p) {
      s.push_back(p);
      self(self, p + 1);
      s.pop_back();
    }
  };
  rec(rec, 1);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return canonical_less(Diagram(a), Diagram(b)); });
  return out;
}

BasisSet enumerate(BasisKind kind, int n, int k, const EnumLimits& limits) {
  if (n < 1) throw UnsupportedN("n must be at least 1");
  if (n > limits.max_n)
    throw ResourceLimit("n = " + std::to_string(n) + " exceeds the enumeration bound " + std::to_string(limits.max_n));
  BasisSet b{kind, n, kind == BasisKind::MobiusK ? k : 0, {}};
  switch (kind) {
    case BasisKind::Disk:
      for (auto& d : enumerate_disk(n)) b.elements.emplace_back(std::move(d));
      break;
    case BasisKind::Annulus:
      for (auto& d : enumerate_annular(n)) b.elements.emplace_back(std::move(d));
      break;
    case BasisKind::MobiusK:
      if (k < 0 || k > n) throw UnsupportedN("k must satisfy 0 <= k <= n");
      for (auto& d : enumerate_mobius(n, k)) b.elements.emplace_back(std::move(d));
      break;
    case BasisKind::MobiusAll:
    case BasisKind::Mb1: {
      int top = kind == BasisKind::Mb1 ? 1 : n;
      for (int kk = 0; kk <= top; ++kk)
        for (auto& d : enumerate_mobius(n, kk)) b.elements.emplace_back(std::move(d));
      break;
    }
  }
  return b;
}

DiskDiagram invert(const DiskDiagram& d) {
  DiskDiagram r{d.n, {}};
  for (const auto& a : d.arcs) r.arcs.push_back(ordered(mirror(d.n, a.first), mirror(d.n, a.second)));
  std::sort(r.arcs.begin(), r.arcs.end());
  return r;
}

AnnularDiagram invert(const AnnularDiagram& d) {
  AnnularDiagram r{d.n, {}, d.seam};
  for (const auto& a : d.arcs) r.arcs.push_back(ordered(mirror(d.n, a.first), mirror(d.n, a.second)));
  sort_with_bits(r.arcs, r.seam);
  return r;
}

MobiusDiagram invert(const MobiusDiagram& d) {
  if (d.k() == 0) return mobius_from_annular(invert(annular_from_mobius(d)));
  MobiusDiagram r{d.n, {}, {}, {}};
  for (int p : d.crosscap) r.crosscap.push_back(mirror(d.n, p));
  std::sort(r.crosscap.begin(), r.crosscap.end());
  for (const auto& a : d.flat) r.flat.push_back(ordered(mirror(d.n, a.first), mirror(d.n, a.second)));
  std::sort(r.flat.begin(), r.flat.end());
  r.seam = derived_seam_bits(r.n, r.crosscap, r.flat);
  return r;
}

Diagram invert(const Diagram& d) {
  return std::visit([](const auto& x) -> Diagram { return invert(x); }, d);
}

DiskDiagram reflect_horizontal(const DiskDiagram& d) { return invert(d); }

DiskDiagram identity_pattern(int n) {
  DiskDiagram d{n, {}};
  for (int p = 1; p <= n; ++p) d.arcs.push_back({p, mirror(n, p)});
  std::sort(d.arcs.begin(), d.arcs.end());
  return d;
}

DiskDiagram cup_cap_pattern(int n, int i) {
  if (i < 1 || i >= n) throw UnsupportedN("cup-cap index must satisfy 1 <= i < n");
  DiskDiagram d{n, {{i, i + 1}, ordered(mirror(n, i), mirror(n, i + 1))}};
  for (int p = 1; p <= n; ++p)
    if (p != i && p != i + 1) d.arcs.push_back({p, mirror(n, p)});
  std::sort(d.arcs.begin(), d.arcs.end());
  return d;
}

std::string_view reason_name(InvalidReason r) {
  switch (r) {
    case InvalidReason::None: return "valid";
    case InvalidReason::Malformed: return "malformed";
    case InvalidReason::ChordCrossing: return "chord-crossing";
    case InvalidReason::SeamCutCrossing: return "seam-cut-crossing";
    case InvalidReason::CutDiskViolation: return "cut-disk-violation";
    case InvalidReason::CrosscapParallel: return "crosscap-parallel";
  }
  return "?";
}

Validation validate(const DiskDiagram& d) {
  if (d.n < 1 || !covers(d.n, d.arcs, {})) return invalid(InvalidReason::Malformed, "not a perfect matching of 1..2n");
  return check_noncrossing(d.arcs);
}

Validation validate(const AnnularDiagram& d) {
  if (d.n < 1 || !covers(d.n, d.arcs, {}) || d.seam.size() != d.arcs.size())
    return invalid(InvalidReason::Malformed, "not a perfect matching of 1..2n with one seam bit per arc");
  if (auto v = check_noncrossing(d.arcs); !v.valid()) return v;
  // Seam-crossing arcs are exactly those enclosing the hole: a nested chain
  // closed under enclosure.
  for (std::size_t i = 0; i < d.arcs.size(); ++i) {
    for (std::size_t j = 0; j < d.arcs.size(); ++j) {
      if (i == j || !d.seam[i]) continue;
      bool nested = encloses(d.arcs[i], d.arcs[j]) || encloses(d.arcs[j], d.arcs[i]);
      if (d.seam[j] && !nested)
        return invalid(InvalidReason::SeamCutCrossing, "seam-crossing arcs " + arcs_text({d.arcs[i]}, nullptr) +
                                                           " and " + arcs_text({d.arcs[j]}, nullptr) + " are not nested");
      if (!d.seam[j] && encloses(d.arcs[j], d.arcs[i]))
        return invalid(InvalidReason::SeamCutCrossing, "arc " + arcs_text({d.arcs[j]}, nullptr) +
                                                           " encloses a seam-crossing arc but does not cross the seam");
    }
  }
  return {};
}

Validation validate(const MobiusDiagram& d) {
  if (d.n < 1 || !covers(d.n, d.flat, d.crosscap) || d.crosscap.size() % 2 ||
      !std::is_sorted(d.crosscap.begin(), d.crosscap.end()) || d.seam.size() != d.flat.size())
    return invalid(InvalidReason::Malformed, "points, crosscap set, or seam bits are inconsistent");
  if (d.k() == 0) return validate(annular_from_mobius(d));
  const int m = static_cast<int>(d.crosscap.size());
  auto g = gaps(d.n, d.crosscap);
  for (const auto& e : d.flat) {
    int ga = gap_of(d.n, d.crosscap, e.first), gb = gap_of(d.n, d.crosscap, e.second);
    if (ga == gb) continue;
    if ((ga + d.k()) % m == gb || (gb + d.k()) % m == ga)
      return invalid(InvalidReason::CrosscapParallel,
                     "flat arc " + arcs_text({e}, nullptr) + " joins opposite gaps of a cut disk");
    return invalid(InvalidReason::CutDiskViolation,
                   "flat arc " + arcs_text({e}, nullptr) + " has endpoints in different cut disks");
  }
  for (const auto& gap : g) {
    // Linear position along the walk.
    std::vector<int> pos(2 * d.n + 1, -1);
    for (std::size_t i = 0; i < gap.size(); ++i) pos[gap[i]] = static_cast<int>(i);
    std::vector<Arc> local;
    for (const auto& e : d.flat)
      if (pos[e.first] >= 0) local.push_back(ordered(pos[e.first], pos[e.second]));
    if (auto v = check_noncrossing(local); !v.valid()) return v;
  }
  if (d.seam != derived_seam_bits(d.n, d.crosscap, d.flat))
    return invalid(InvalidReason::Malformed, "seam bits disagree with the crosscap layout");
  return {};
}

Validation validate(const Diagram& d) {
  return std::visit([](const auto& x) { return validate(x); }, d);
}

std::string serialize(const DiskDiagram& d) { return "M[" + arcs_text(d.arcs, nullptr) + "]"; }

std::string serialize(const AnnularDiagram& d) { return "A[" + arcs_text(d.arcs, &d.seam) + "]"; }

std::string serialize(const MobiusDiagram& d) {
  std::string s = "C{";
  for (std::size_t i = 0; i < d.crosscap.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d.crosscap[i]);
  }
  s += "}F[";
  s += arcs_text(d.flat, d.k() == 0 ? &d.seam : nullptr);
  return s + "]";
}

std::string serialize(const Diagram& d) {
  return std::visit([](const auto& x) { return serialize(x); }, d);
}

Diagram parse_diagram(std::string_view text) {
  TextReader r(text);
  Diagram out;
  int points = 0;
  if (r.accept('M')) {
    DiskDiagram d;
    read_arcs(r, d.arcs, nullptr);
    points = 2 * static_cast<int>(d.arcs.size());
    d.n = points / 2;
    std::sort(d.arcs.begin(), d.arcs.end());
    out = d;
  } else if (r.accept('A')) {
    AnnularDiagram d;
    read_arcs(r, d.arcs, &d.seam);
    d.n = static_cast<int>(d.arcs.size());
    sort_with_bits(d.arcs, d.seam);
    out = d;
  } else if (r.accept('C')) {
    MobiusDiagram d;
    r.expect('{');
    if (r.peek() != '}') {
      do d.crosscap.push_back(r.number());
      while (r.accept(','));
    }
    r.expect('}');
    r.expect('F');
    std::sort(d.crosscap.begin(), d.crosscap.end());
    read_arcs(r, d.flat, d.crosscap.empty() ? &d.seam : nullptr);
    d.n = (static_cast<int>(d.crosscap.size()) + 2 * static_cast<int>(d.flat.size())) / 2;
    if (d.crosscap.empty()) {
      sort_with_bits(d.flat, d.seam);
    } else {
      std::sort(d.flat.begin(), d.flat.end());
      d.seam = derived_seam_bits(d.n, d.crosscap, d.flat);
    }
    out = d;
  } else {
    throw ParseError("expected 'M', 'A', or 'C'", r.pos());
  }
  if (!r.done()) throw ParseError("trailing characters", r.pos());
  if (auto v = validate(out); !v.valid())
    throw InvalidDiagram(std::string(reason_name(v.reason)) + ": " + v.detail);
  return out;
}

bool canonical_less(const Diagram& a, const Diagram& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  return key_of(a) < key_of(b);
}

MobiusDiagram mobius_from_annular(const AnnularDiagram& a) { return {a.n, {}, a.arcs, a.seam}; }

AnnularDiagram annular_from_mobius(const MobiusDiagram& m) {
  if (m.k() != 0) throw InvalidDiagram("only k = 0 Mobius diagrams are annular");
  return {m.n, m.flat, m.seam};
}

}  // namespace gramdet
