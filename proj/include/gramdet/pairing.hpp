#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "gramdet/diagrams.hpp"
#include "gramdet/poly.hpp"
#include "gramdet/surface_map.hpp"

namespace gramdet {

enum class CurveClass { d, z, x, y, w };

Var curve_var(CurveClass c);

struct CurveClassCount {
  std::array<unsigned, kNumVars> m{};

  void add(CurveClass c) { ++m[static_cast<int>(curve_var(c))]; }
  unsigned total() const;
  Polynomial to_monomial() const;
};

Polynomial pair_disk(const DiskDiagram& c1, const DiskDiagram& c2);
Polynomial pair_trace(const DiskDiagram& a1, const DiskDiagram& a2);
Polynomial pair_annular(const AnnularDiagram& b1, const AnnularDiagram& b2);

struct TracedLoop {
  std::vector<int> points;  // boundary points in traversal order
  int passes1 = 0;          // crosscap arcs of the first diagram used
  int passes2 = 0;
  int seam_crossings = 0;
};

// Two Mobius diagrams glued along the boundary circle, label i to label i.
// Not safe for concurrent use; each pairing builds its own.
class GluedPicture {
 public:
  GluedPicture(const MobiusDiagram& m1, const MobiusDiagram& m2);

  const std::vector<TracedLoop>& loops() const { return loops_; }
  std::size_t segment_count() const { return segments_; }

  // nullopt when both pass counts are even and one is positive.
  std::optional<CurveClass> classify_fast(std::size_t loop) const;
  // Cut-and-Euler-characteristic test on the glued Klein bottle.
  CurveClass classify_general(std::size_t loop) const;
  // Fast path, falling back to the general test.
  CurveClass classify(std::size_t loop) const;

  int euler_characteristic() const;

 private:
  const KleinComplex& complex() const;

  MobiusDiagram m1_, m2_;
  std::vector<TracedLoop> loops_;
  std::size_t segments_ = 0;
  mutable std::shared_ptr<const KleinComplex> complex_;
};

CurveClass classify_klein(const GluedPicture& picture, std::size_t loop);

enum class ClassifierMode { Auto, GeneralOnly };
Polynomial pair_mobius(const MobiusDiagram& m1, const MobiusDiagram& m2, ClassifierMode mode = ClassifierMode::Auto);

// Counts of loops that needed the general classifier during pair_mobius.
struct ClassifierCensus {
  std::uint64_t loops = 0;
  std::uint64_t general_loops = 0;
  std::uint64_t general_pairs = 0;
};
ClassifierCensus classifier_census();
void reset_classifier_census();

}  // namespace gramdet
