#include "gramdet/pairing.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

#include "gramdet/error.hpp"

namespace gramdet {

namespace {

std::atomic<std::uint64_t> g_loops{0};
std::atomic<std::uint64_t> g_general_loops{0};
std::atomic<std::uint64_t> g_general_pairs{0};

std::vector<int> partners(int n, const std::vector<Arc>& arcs) {
  std::vector<int> p(2 * n + 1, 0);
  for (const auto& a : arcs) {
    p[a.first] = a.second;
    p[a.second] = a.first;
  }
  return p;
}

void require_same_n(int a, int b) {
  if (a != b) throw InvalidDiagram("paired diagrams must have the same n");
}

// Loops of the union of two matchings on the same labels. visit(step, side,
// from, to) is called for every arc used.
template <typename Visit>
int count_union_loops(int n, const std::vector<int>& p1, const std::vector<int>& p2, Visit&& visit) {
  std::vector<char> seen(2 * n + 1, 0);
  int loops = 0;
  for (int start = 1; start <= 2 * n; ++start) {
    if (seen[start]) continue;
    int pos = start;
    do {
      seen[pos] = 1;
      int q = p1[pos];
      visit(loops, 0, pos, q);
      seen[q] = 1;
      int r = p2[q];
      visit(loops, 1, q, r);
      pos = r;
    } while (pos != start);
    ++loops;
  }
  return loops;
}

struct Side {
  std::vector<int> partner;
  std::vector<char> crosscap;  // point is an endpoint of a crosscap arc
  std::vector<std::uint8_t> seam;

  explicit Side(const MobiusDiagram& m) : partner(2 * m.n + 1, 0), crosscap(2 * m.n + 1, 0), seam(2 * m.n + 1, 0) {
    for (std::size_t i = 0; i < m.flat.size(); ++i) {
      const auto& a = m.flat[i];
      partner[a.first] = a.second;
      partner[a.second] = a.first;
      seam[a.first] = seam[a.second] = m.seam[i];
    }
    for (const auto& a : m.crosscap_arcs()) {
      partner[a.first] = a.second;
      partner[a.second] = a.first;
      crosscap[a.first] = crosscap[a.second] = 1;
    }
  }
};

}  // namespace

Var curve_var(CurveClass c) {
  switch (c) {
    case CurveClass::d: return Var::d;
    case CurveClass::z: return Var::z;
    case CurveClass::x: return Var::x;
    case CurveClass::y: return Var::y;
    case CurveClass::w: return Var::w;
  }
  return Var::d;
}

unsigned CurveClassCount::total() const {
  unsigned t = 0;
  for (unsigned v : m) t += v;
  return t;
}

Polynomial CurveClassCount::to_monomial() const { return Polynomial(Monomial(m)); }

Polynomial pair_disk(const DiskDiagram& c1, const DiskDiagram& c2) {
  require_same_n(c1.n, c2.n);
  int loops = count_union_loops(c1.n, partners(c1.n, c1.arcs), partners(c2.n, c2.arcs), [](int, int, int, int) {});
  return Polynomial::var(Var::d, static_cast<unsigned>(loops));
}

Polynomial pair_trace(const DiskDiagram& a1, const DiskDiagram& a2) {
  require_same_n(a1.n, a2.n);
  const int n = a1.n;
  // Labels 1..n are the top row. Crossing from a1 to a2 at a top label goes
  // once around the closure band; back from a2 to a1 undoes it.
  std::vector<int> winding;
  int loops = count_union_loops(n, partners(n, a1.arcs), partners(n, a2.arcs), [&](int loop, int side, int, int to) {
    if (static_cast<int>(winding.size()) <= loop) winding.resize(loop + 1, 0);
    if (to <= n) winding[loop] += side == 0 ? 1 : -1;
  });
  CurveClassCount count;
  for (int l = 0; l < loops; ++l) {
    if (std::abs(winding[l]) > 1) throw ClassificationFailure("closure loop winds more than once around the annulus");
    count.add(winding[l] == 0 ? CurveClass::d : CurveClass::z);
  }
  return count.to_monomial();
}

Polynomial pair_annular(const AnnularDiagram& b1, const AnnularDiagram& b2) {
  require_same_n(b1.n, b2.n);
  const int n = b1.n;
  std::vector<std::uint8_t> s1(2 * n + 1, 0), s2(2 * n + 1, 0);
  for (std::size_t i = 0; i < b1.arcs.size(); ++i) s1[b1.arcs[i].first] = s1[b1.arcs[i].second] = b1.seam[i];
  for (std::size_t i = 0; i < b2.arcs.size(); ++i) s2[b2.arcs[i].first] = s2[b2.arcs[i].second] = b2.seam[i];
  std::vector<int> parity;
  int loops = count_union_loops(n, partners(n, b1.arcs), partners(n, b2.arcs), [&](int loop, int side, int from, int) {
    if (static_cast<int>(parity.size()) <= loop) parity.resize(loop + 1, 0);
    parity[loop] ^= side == 0 ? s1[from] : s2[from];
  });
  CurveClassCount count;
  for (int l = 0; l < loops; ++l) count.add(parity[l] ? CurveClass::z : CurveClass::d);
  return count.to_monomial();
}

GluedPicture::GluedPicture(const MobiusDiagram& m1, const MobiusDiagram& m2) : m1_(m1), m2_(m2) {
  require_same_n(m1.n, m2.n);
  const int n = m1.n;
  Side a(m1), b(m2);
  count_union_loops(n, a.partner, b.partner, [&](int loop, int side, int from, int) {
    if (static_cast<int>(loops_.size()) <= loop) loops_.resize(loop + 1);
    TracedLoop& l = loops_[loop];
    const Side& s = side == 0 ? a : b;
    l.points.push_back(from);
    if (s.crosscap[from]) {
      ++(side == 0 ? l.passes1 : l.passes2);
    } else {
      l.seam_crossings += s.seam[from];
    }
    ++segments_;
  });
}

std::optional<CurveClass> GluedPicture::classify_fast(std::size_t loop) const {
  const TracedLoop& l = loops_.at(loop);
  bool odd1 = l.passes1 % 2, odd2 = l.passes2 % 2;
  if (odd1 && odd2) return CurveClass::w;
  if (odd1) return CurveClass::x;
  if (odd2) return CurveClass::y;
  if (l.passes1 == 0 && l.passes2 == 0) return l.seam_crossings % 2 ? CurveClass::z : CurveClass::d;
  return std::nullopt;
}

const KleinComplex& GluedPicture::complex() const {
  if (!complex_) complex_ = std::make_shared<const KleinComplex>(build_klein_complex(m1_, m2_));
  return *complex_;
}

int GluedPicture::euler_characteristic() const { return complex().complex.euler_characteristic(); }

CurveClass GluedPicture::classify_general(std::size_t loop) const {
  const TracedLoop& l = loops_.at(loop);
  const KleinComplex& k = complex();
  // Every arc of the loop, on both sides; crosscap arcs contribute both halves.
  std::vector<int> cut;
  for (int p : l.points)
    for (int side = 0; side < 2; ++side) cut.push_back(k.arc_edge[side][p]);
  std::sort(cut.begin(), cut.end());
  cut.erase(std::unique(cut.begin(), cut.end()), cut.end());

  auto pieces = cut_along(k.complex, cut);
  auto failure = [&](const char* why) {
    return ClassificationFailure(std::string("surface map: ") + why + " (" + serialize(m1_) + " | " + serialize(m2_) + ")");
  };
  if (pieces.size() == 2) {
    for (const auto& p : pieces)
      if (p.boundary_circles != 1) throw failure("separating curve with unexpected boundary");
    if (pieces[0].euler_characteristic == 1 || pieces[1].euler_characteristic == 1) return CurveClass::d;
    if (pieces[0].euler_characteristic == 0 && pieces[1].euler_characteristic == 0) return CurveClass::z;
    throw failure("separating curve bounds neither a disk nor two Mobius bands");
  }
  if (pieces.size() == 1) {
    if (pieces[0].euler_characteristic != 0) throw failure("nonseparating cut has nonzero Euler characteristic");
    if (pieces[0].boundary_circles == 2) return CurveClass::w;
    if (pieces[0].boundary_circles == 1) {
      if (l.passes1 % 2 == l.passes2 % 2) throw failure("one-sided curve with equal crosscap parities");
      return l.passes1 % 2 ? CurveClass::x : CurveClass::y;
    }
  }
  throw failure("unexpected cut decomposition");
}

CurveClass GluedPicture::classify(std::size_t loop) const {
  if (auto c = classify_fast(loop)) return *c;
  return classify_general(loop);
}

CurveClass classify_klein(const GluedPicture& picture, std::size_t loop) { return picture.classify(loop); }

Polynomial pair_mobius(const MobiusDiagram& m1, const MobiusDiagram& m2, ClassifierMode mode) {
  GluedPicture g(m1, m2);
  CurveClassCount count;
  bool used_general = false;
  for (std::size_t l = 0; l < g.loops().size(); ++l) {
    std::optional<CurveClass> c;
    if (mode == ClassifierMode::Auto) c = g.classify_fast(l);
    if (!c) {
      c = g.classify_general(l);
      if (mode == ClassifierMode::Auto) {
        used_general = true;
        g_general_loops.fetch_add(1, std::memory_order_relaxed);
      }
    }
    count.add(*c);
  }
  g_loops.fetch_add(g.loops().size(), std::memory_order_relaxed);
  if (used_general) g_general_pairs.fetch_add(1, std::memory_order_relaxed);
  return count.to_monomial();
}

ClassifierCensus classifier_census() {
  return {g_loops.load(), g_general_loops.load(), g_general_pairs.load()};
}

void reset_classifier_census() {
  g_loops = 0;
  g_general_loops = 0;
  g_general_pairs = 0;
}

}  // namespace gramdet
