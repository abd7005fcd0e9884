#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantor/crossed.hpp"
#include "cantor/window.hpp"

namespace cantor {

/// Banded L x L matrix of the finite-window regular representation of a
/// crossed element on a Z-orbit segment: basis vector n is the point x*n,
/// and (f u_g) carries e_{n+g} to f(x*n) e_n (entry at (n, n+g)), which is
/// the orientation making represent(a)*represent(b) agree with
/// represent(a*b) away from the window edges. Rows whose coefficients
/// cannot be evaluated near the edges are zeroed.
class RegularRepMatrix {
 public:
  RegularRepMatrix() = default;

  std::int64_t size() const { return L_; }
  int band() const { return band_; }
  std::int64_t edge_rows() const { return edge_rows_; }

  /// y = A x
  void apply(const std::vector<double>& x, std::vector<double>& y) const;
  /// y = A^T x
  void apply_transpose(const std::vector<double>& x, std::vector<double>& y) const;

  double entry(std::int64_t row, std::int64_t col) const;

  friend RegularRepMatrix represent(const CrossedElement& a, const OrbitWindow& w);
  friend RegularRepMatrix represent_interior(const CrossedElement& a, const OrbitWindow& w,
                                             std::int64_t margin);

 private:
  struct Diagonal {
    std::int64_t offset = 0;  // column = row - offset
    std::vector<double> values;
  };
  static RegularRepMatrix build(const CrossedElement& a, const OrbitWindow& w,
                                std::int64_t margin);
  std::int64_t L_ = 0;
  int band_ = 0;
  std::int64_t edge_rows_ = 0;
  std::vector<Diagonal> diagonals_;
};

RegularRepMatrix represent(const CrossedElement& a, const OrbitWindow& w);
/// Representation compressed to rows/columns [margin, L - margin).
RegularRepMatrix represent_interior(const CrossedElement& a, const OrbitWindow& w,
                                    std::int64_t margin);

struct NormEstimate {
  double value = 0.0;       // spectral norm of the window matrix
  double edge_bound = 0.0;  // truncation allowance: coefficient mass * band width / L
  std::int64_t window = 0;
  int band = 0;
  bool dense = false;       // solved densely (L <= 512) rather than iteratively
  double upper() const { return value + edge_bound; }
};

NormEstimate matrix_norm(const RegularRepMatrix& m, double coefficient_mass,
                         std::uint64_t seed = 0x5eed);

/// Spectral norm of the represented element plus the truncation allowance.
NormEstimate window_norm(const CrossedElement& a, const OrbitWindow& w,
                         std::uint64_t seed = 0x5eed);

/// Smallest eigenvalue of the symmetrized window matrix (positivity probe).
double min_eigenvalue(const RegularRepMatrix& m, std::uint64_t seed = 0x5eed);

struct SmallDomainResult {
  Clopen p_cylinder;          // the cylinder p
  LcReal h;                   // (p^2 - 2 eps)_+
  double expectation_norm = 0.0;
  double pap_minus_p2 = 0.0;  // exact sup norm of p a p - p^2 after normalization
  double min_eig = 0.0;       // positivity probe of the input on the window
  bool degenerate = false;    // eps >= 1/2 forces h = 0
};

/// The small-domain construction: a norm-one cylinder p near a maximizer of
/// E(a) with p (p o g) = 0 for every g in supp(a) \ {e}, and the cut-down
/// h = (p^2 - 2 eps)_+ with p a p = p E(a) p exact by clopen disjointness.
SmallDomainResult small_domain_element(const CrossedElement& a, const OrbitWindow& w, double eps,
                                       int max_extra_radius = 8);

}  // namespace cantor
