#pragma once

#include <string>
#include <vector>

#include "maninkit/exactlin.hpp"

namespace maninkit {

// Dense structure constants: [e_i, e_j] = sum_k c(i,j,k) e_k.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(std::size_t n);

  std::size_t dim() const { return n_; }
  Rational& c(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * n_ + j) * n_ + k]; }
  const Rational& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
  // Sets [e_i,e_j] = v and [e_j,e_i] = -v.
  void set_bracket(std::size_t i, std::size_t j, const Vec& v);

  Vec bracket(const Vec& u, const Vec& v) const;
  // Matrix of ad_u: column j holds [u, e_j].
  Mat ad(const Vec& u) const;
  // Matrix of the coadjoint action, <ad*_u mu, v> = -<mu, [u,v]>.
  Mat coad(const Vec& u) const;

  bool is_antisymmetric() const;
  friend bool operator==(const LieAlgebra&, const LieAlgebra&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> c_;
};

Rational jacobi_defect(const LieAlgebra& L);
// Max over basis triples of |Q([u,v],w) + Q(v,[u,w])|.
Rational invariance_defect(const LieAlgebra& L, const Mat& Q);
// Structure constants in a new basis (rows of P); P must be invertible.
LieAlgebra change_basis(const LieAlgebra& L, const Mat& P);

LieAlgebra abelian(std::size_t n);
LieAlgebra so3();
LieAlgebra sl2();
LieAlgebra heis3();

struct ManinPair {
  LieAlgebra d;
  Mat Q;
  Subspace g;
  std::size_t half() const { return d.dim() / 2; }
};

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckItem> items;
  bool pass() const;
  void add(std::string name, bool ok, std::string detail = {});
  const CheckItem* find(const std::string& name) const;
};

CheckReport validate_manin_pair(const ManinPair& P);

ManinPair pair_direct_sum(const LieAlgebra& g, const Mat& B);
ManinPair cotangent_pair(const LieAlgebra& g);

// (g, F, chi) with F stored through its dual: Fs(a,b,k) = F*(eps^a, eps^b)(e_k),
// chi(a,b,c) = chi(eps^a, eps^b, eps^c).
struct LieQuasiBialgebra {
  LieAlgebra g;
  std::vector<Rational> fstar;
  std::vector<Rational> chi_;

  LieQuasiBialgebra() = default;
  explicit LieQuasiBialgebra(LieAlgebra alg);
  std::size_t dim() const { return g.dim(); }
  Rational& Fs(std::size_t a, std::size_t b, std::size_t k) { return fstar[(a * dim() + b) * dim() + k]; }
  const Rational& Fs(std::size_t a, std::size_t b, std::size_t k) const { return fstar[(a * dim() + b) * dim() + k]; }
  Rational& chi(std::size_t a, std::size_t b, std::size_t c) { return chi_[(a * dim() + b) * dim() + c]; }
  const Rational& chi(std::size_t a, std::size_t b, std::size_t c) const { return chi_[(a * dim() + b) * dim() + c]; }
  // Writes all antisymmetric images of one coefficient.
  void set_Fs(std::size_t a, std::size_t b, std::size_t k, const Rational& v);
  void set_chi(std::size_t a, std::size_t b, std::size_t c, const Rational& v);
  friend bool operator==(const LieQuasiBialgebra&, const LieQuasiBialgebra&) = default;
};

// Bracket on g + g^* with canonical pairing built from (g, F, chi); g is the first block.
ManinPair drinfeld_double(const LieQuasiBialgebra& q);

// Coordinates of a vector of g inside d, relative to the canonical basis of g.
Vec g_coords(const ManinPair& P, const Vec& x);
// The map iota^*: d -> g^* with <iota^* x, b_i> = Q(x, b_i) for the canonical basis b of g.
Mat iota_star(const ManinPair& P);

}  // namespace maninkit
