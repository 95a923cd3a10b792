#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace gramdet {

// Boundary points are 1..2n in cyclic order; pairs are stored with first < second.
using Arc = std::pair<int, int>;

struct DiskDiagram {
  int n = 0;
  std::vector<Arc> arcs;  // sorted

  friend bool operator==(const DiskDiagram&, const DiskDiagram&) = default;
};

// seam[i] = 1 iff arcs[i] crosses the seam between 2n and 1.
struct AnnularDiagram {
  int n = 0;
  std::vector<Arc> arcs;  // sorted
  std::vector<std::uint8_t> seam;

  friend bool operator==(const AnnularDiagram&, const AnnularDiagram&) = default;
};

// crosscap: sorted endpoints s_0 < ... < s_{2k-1}; arc t joins s_t and s_{t+k}.
// k = 0 carries explicit seam bits; for k >= 1 the seam bits are derived.
struct MobiusDiagram {
  int n = 0;
  std::vector<int> crosscap;
  std::vector<Arc> flat;  // sorted
  std::vector<std::uint8_t> seam;

  int k() const { return static_cast<int>(crosscap.size()) / 2; }
  std::vector<Arc> crosscap_arcs() const;

  friend bool operator==(const MobiusDiagram&, const MobiusDiagram&) = default;
};

using Diagram = std::variant<DiskDiagram, AnnularDiagram, MobiusDiagram>;

enum class BasisKind { Disk, Annulus, MobiusAll, MobiusK, Mb1 };

struct BasisSet {
  BasisKind kind = BasisKind::Disk;
  int n = 0;
  int k = 0;  // only for MobiusK
  std::vector<Diagram> elements;

  std::size_t size() const { return elements.size(); }
};

struct EnumLimits {
  int max_n = 8;
};

BasisSet enumerate(BasisKind kind, int n, int k = 0, const EnumLimits& limits = {});

// Noncrossing perfect matchings of the given points, taken in linear order.
std::vector<std::vector<Arc>> noncrossing_matchings(const std::vector<int>& points);

std::vector<DiskDiagram> enumerate_disk(int n);
std::vector<AnnularDiagram> enumerate_annular(int n);
std::vector<MobiusDiagram> enumerate_mobius(int n, int k);

// i -> 2n+1-i.
DiskDiagram invert(const DiskDiagram& d);
AnnularDiagram invert(const AnnularDiagram& d);
MobiusDiagram invert(const MobiusDiagram& d);
Diagram invert(const Diagram& d);

// Rectangle reading: labels 1..n run along the top left to right, bottom
// position p (left to right) carries label 2n+1-p.
DiskDiagram reflect_horizontal(const DiskDiagram& d);

// Cup-cap pattern e_i and the identity pattern in rectangle reading.
DiskDiagram identity_pattern(int n);
DiskDiagram cup_cap_pattern(int n, int i);

enum class InvalidReason {
  None,
  Malformed,
  ChordCrossing,
  SeamCutCrossing,
  CutDiskViolation,
  CrosscapParallel,
};

struct Validation {
  InvalidReason reason = InvalidReason::None;
  std::string detail;
  bool valid() const { return reason == InvalidReason::None; }
};

std::string_view reason_name(InvalidReason r);

Validation validate(const DiskDiagram& d);
Validation validate(const AnnularDiagram& d);
Validation validate(const MobiusDiagram& d);
Validation validate(const Diagram& d);

// Seam bits of flat arcs implied by a k >= 1 layout.
std::vector<std::uint8_t> derived_seam_bits(int n, const std::vector<int>& crosscap, const std::vector<Arc>& flat);

// "M[(1,6)(2,3)(4,5)]", "A[(1,4|1)(2,3|0)]", "C{1,4}F[(2,3)]"; k = 0 Mobius
// diagrams list seam bits as "C{}F[(1,4|1)(2,3|0)]".
std::string serialize(const DiskDiagram& d);
std::string serialize(const AnnularDiagram& d);
std::string serialize(const MobiusDiagram& d);
std::string serialize(const Diagram& d);

// n is inferred from the point count. Throws ParseError or InvalidDiagram.
Diagram parse_diagram(std::string_view text);

// Sort key for the canonical basis order.
bool canonical_less(const Diagram& a, const Diagram& b);

MobiusDiagram mobius_from_annular(const AnnularDiagram& a);
AnnularDiagram annular_from_mobius(const MobiusDiagram& m);

}  // namespace gramdet
