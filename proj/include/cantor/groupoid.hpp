#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cantor/shape.hpp"

namespace cantor {

/// Open relatively compact subgroupoid of the transformation groupoid,
/// built from a shape function: membership is
///     (x, g) in G  iff  g in S(x),
/// realized through the piece partition Omega = |_| Z_i * g (g in F_i) and
/// the derived exclusion sets Y_g. With the action convention x*g = s^g(x)
/// the allowed landing pieces for a jump g are
///     Omega \ Y_g = |_|_i |_|_{p in F_i, p - g in F_i} Z_i * p.
class SmallGroupoid {
 public:
  struct Piece {
    int rep = 0;           // index into shape().cells
    GroupElement offset;   // element of F_rep
    Clopen cell;           // Z_rep * offset, at the shared data radius
  };

  const ShapeFunction& shape() const { return shape_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const FiniteGroupSet& supp() const { return supp_; }
  int data_radius() const { return data_radius_; }
  bool extended_to_full_space() const { return extended_; }
  const SystemPtr& system() const { return sys_; }

  /// Piece containing the atom (w at radius R), or -1 when outside Omega.
  int piece_index(const Word& w, int R) const;
  /// S(x) for x in the atom.
  FiniteGroupSet shape_at(const Word& w, int R) const;
  /// Membership (x, g) in G, evaluated through the Y_g route.
  bool member(const Word& w, int R, const GroupElement& g) const;
  /// The exclusion set Y_g as a clopen set.
  Clopen y_gamma(const GroupElement& g) const;

  /// Fault-injection hook for negative controls: returns a copy whose
  /// piece assignment is tampered, so the axiom checker has something to
  /// catch. Never used on the construction path.
  SmallGroupoid with_tampered_piece(std::size_t piece, int rep, const GroupElement& offset) const;

  friend SmallGroupoid build_groupoid(const ShapeFunction& s, bool extend_to_full_space);

 private:
  SystemPtr sys_;
  ShapeFunction shape_;
  std::vector<Piece> pieces_;
  FiniteGroupSet supp_;
  int data_radius_ = 0;
  bool extended_ = false;
  std::map<Word, int> piece_of_atom_;  // atoms at data_radius_
};

/// Builds the groupoid, verifying the shape-function invariants first.
/// With extend_to_full_space (the default), the unit space is extended to
/// all of X by assigning the trivial shape {e} off the domain.
SmallGroupoid build_groupoid(const ShapeFunction& s, bool extend_to_full_space = true);

struct OrbitResult {
  std::vector<GroupElement> offsets;  // S(x)
  std::vector<Word> points;           // atoms of x*g, deduplicated
  int point_radius = 0;
  bool capped = false;  // duplicates collapsed (non-free oracle systems)
};

/// Orbit of the atom: x S(x), with the point list capped on non-free systems.
OrbitResult orbit(const SmallGroupoid& g, const Word& w, int R);

struct AxiomReport {
  std::int64_t atoms_checked = 0;
  std::int64_t membership_checks = 0;
  std::int64_t violations_unit = 0;         // (x, e) in G
  std::int64_t violations_inverse = 0;      // (x,g) in G => (xg, g^-1) in G
  std::int64_t violations_composition = 0;  // composable products stay in G
  std::int64_t violations_equivariance = 0; // S(xg) = S(x) - g
  std::int64_t violations_membership = 0;   // Y_g route disagrees with S route
  std::vector<std::string> witnesses;
  bool ok() const {
    return violations_unit + violations_inverse + violations_composition +
               violations_equivariance + violations_membership ==
           0;
  }
};

/// Exhaustive check of the groupoid axioms over all atoms at the radius
/// needed to trace every jump in supp(G) + supp(G).
AxiomReport verify_groupoid_axioms(const SmallGroupoid& g);

struct OrbitInvarianceRow {
  int piece = 0;
  std::string shape;
  double defect = 0.0;
};

struct OrbitInvarianceReport {
  std::vector<OrbitInvarianceRow> rows;
  double worst = 0.0;
  bool pass = false;  // all defects < eps
};

/// Per-piece invariance defect of the orbit shapes against K.
OrbitInvarianceReport orbit_invariance_report(const SmallGroupoid& g, const FiniteGroupSet& k,
                                              double eps);

/// Synthetic adjacency for the boundary check: a limit point declared to lie
/// in the closure of the representative cell, with its shape values along
/// the translated positions.
struct BoundaryAdjacency {
  int rep = 0;
  std::map<GroupElement, FiniteGroupSet> limit_shapes;  // g in F_rep -> S(x g)
};

struct BoundaryDecomposition {
  int rep = 0;
  std::vector<std::pair<GroupElement, FiniteGroupSet>> parts;  // F = |_| g_i F_i
  bool trivial() const { return parts.size() == 1; }
};

struct BoundaryReport {
  bool cells_pairwise_disjoint = false;  // clopen case: no cell meets another's closure
  std::vector<BoundaryDecomposition> decompositions;
  bool all_trivial() const;
};

/// In the Cantor pipeline every cell is clopen, so all boundary
/// decompositions are trivial; synthetic adjacency data (for negative
/// controls) yields the induced nontrivial decompositions.
BoundaryReport boundary_decomposition_check(const ShapeFunction& s,
                                            const std::vector<BoundaryAdjacency>& adjacency = {});

}  // namespace cantor
