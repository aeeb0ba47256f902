#ifndef KRAW_LIEMOD_HPP
#define KRAW_LIEMOD_HPP

// sl_{d+1} machinery: the two Cartan bases as explicit matrices, the
// conjugator R, the antiautomorphism a(b) = P~ b^t P~^{-1}, the module V of
// degree-N homogeneous polynomials with its two weight bases, and the
// symmetric bilinear form that pairs them.
//
// Scaling convention: R = P~ U^t and R^{-1} = nu P U (theta~ = 1, theta = nu),
// which keeps everything in the base field.  Only the product theta theta~
// enters the bilinear form and the pairing formula.

#include "kraw/kappa.hpp"
#include "kraw/report.hpp"

#include <map>

namespace kraw {

/// phi_i = e_{i,i} - I/(d+1) for 1 <= i <= d; i = 0 gives phi_0 = -sum_j phi_j.
template <class T>
Matrix<T> basis_phi(int d, int i);

/// Matrix unit e_{i,j}, i != j.
template <class T>
Matrix<T> basis_e(int d, int i, int j);

template <class T>
struct Conjugator {
  Matrix<T> r;      ///< P~ U^t
  Matrix<T> r_inv;  ///< nu P U
};

template <class T>
Conjugator<T> conjugator(const ParameterSet<T>& kappa);

/// R beta R^{-1}.
template <class T>
Matrix<T> conjugate(const Conjugator<T>& c, const Matrix<T>& beta);

/// phi~_i = R phi_i R^{-1}; i = 0 gives phi~_0.
template <class T>
Matrix<T> dual_phi(const ParameterSet<T>& kappa, int i);

template <class T>
Matrix<T> dual_e(const ParameterSet<T>& kappa, int i, int j);

/// phi~_i written out in the basis {phi_j, e_{k,l}} with the closed-form
/// coefficients nu p_i p~_k u_{i,k} u_{i,l} and p_i (nu p~_j u_{i,j}^2 - 1).
template <class T>
Matrix<T> dual_phi_closed_form(const ParameterSet<T>& kappa, int i);

/// phi_i assembled from {phi~_j, e~_{k,l}} with the coefficients
/// nu p~_i p_k u_{k,i} u_{l,i} and p~_i (nu p_j u_{j,i}^2 - 1).
template <class T>
Matrix<T> phi_from_dual_expansion(const ParameterSet<T>& kappa, int i);

template <class T>
Matrix<T> antiauto(const ParameterSet<T>& kappa, const Matrix<T>& beta);

/// Element of V: a finitely supported map from I to scalars in the monomial
/// basis.  Zero coefficients are never stored.
template <class T>
class HomogPoly {
 public:
  HomogPoly(int d, int N) : d_(d), N_(N) {}

  static HomogPoly monomial(const MultiIndex& lambda, T coeff = T(1));

  int dim() const { return d_; }
  int degree() const { return N_; }
  const std::map<MultiIndex, T>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  T coefficient(const MultiIndex& lambda) const;
  void add(const MultiIndex& lambda, const T& coeff);

  HomogPoly& operator+=(const HomogPoly& o);
  HomogPoly& operator-=(const HomogPoly& o);
  HomogPoly& operator*=(const T& s);
  friend HomogPoly operator+(HomogPoly a, const HomogPoly& b) { return a += b; }
  friend HomogPoly operator-(HomogPoly a, const HomogPoly& b) { return a -= b; }
  friend HomogPoly operator*(const T& s, HomogPoly a) { return a *= s; }

  /// Product of homogeneous polynomials (degrees add).
  friend HomogPoly operator*(const HomogPoly& a, const HomogPoly& b) { return multiply(a, b); }

  friend bool operator==(const HomogPoly& a, const HomogPoly& b) {
    return a.d_ == b.d_ && a.N_ == b.N_ && a.terms_ == b.terms_;
  }

 private:
  static HomogPoly multiply(const HomogPoly& a, const HomogPoly& b);

  int d_;
  int N_;
  std::map<MultiIndex, T> terms_;
};

/// Largest scaled coefficient residual between two polynomials.
template <class T>
bool near(const HomogPoly<T>& a, const HomogPoly<T>& b, double eps, double* residual = nullptr);

/// beta acting as the derivation sum_{i,j} beta_{i,j} x_i d/dx_j.
template <class T>
HomogPoly<T> act(const Matrix<T>& beta, const HomogPoly<T>& f);

/// Linear form x~_k = sum_j R_{j,k} x_j.
template <class T>
HomogPoly<T> xtilde(const Conjugator<T>& c, int k);

/// x~^lambda = prod_k x~_k^{lambda_k} expanded in monomials.
template <class T>
HomogPoly<T> xtilde_monomial(const ParameterSet<T>& kappa, int N, const MultiIndex& lambda);

/// <x^n, x^m> = delta_{n,m} n!/p~^n nu^N extended bilinearly.
template <class T>
T bilinear(const ParameterSet<T>& kappa, int N, const HomogPoly<T>& f, const HomogPoly<T>& g);

/// P(n', n~') = <x^n, x~^n~> / (nu^N N!).
template <class T>
T pairing_eval(const ParameterSet<T>& kappa, int N, const MultiIndex& n, const MultiIndex& nt);

/// Coordinates of f in the basis {x~^mu : mu in I}, obtained by solving the
/// change-of-basis system.  Indexed like SimplexLattice(d, N).
template <class T>
class DualBasis {
 public:
  DualBasis(const ParameterSet<T>& kappa, int N);

  const SimplexLattice& lattice() const { return lattice_; }
  const HomogPoly<T>& element(std::size_t r) const { return elements_[r]; }
  std::vector<T> coordinates(const HomogPoly<T>& f) const;

 private:
  SimplexLattice lattice_;
  std::vector<HomogPoly<T>> elements_;
  Matrix<T> to_dual_;  // monomial coordinates -> x~ coordinates
};

// Verification passes.  Each returns a report naming every failing index.

/// a(phi_i) = phi_i, a(phi~_i) = phi~_i, a(e_{i,j}) = (p~_j/p~_i) e_{j,i},
/// a(e~_{i,j}) = (p_j/p_i) e~_{j,i}, a o a = id, product reversal, and the
/// closed-form expansions of phi~_i and phi_i checked against conjugation.
template <class T>
CheckReport check_antiauto(const ParameterSet<T>& kappa, double eps = kDefaultEps);

/// e_{i,j} = ([phi_j,[phi_i,[phi_j,phi~_0]]] - [phi_i,[phi_j,phi~_0]]) / (2 p~_i).
template <class T>
CheckReport check_generation(const ParameterSet<T>& kappa, double eps = kDefaultEps);

/// Weight equations for both bases, adjointness <b.xi, eta> = <xi, a(b).eta>
/// over the full basis, and the norms <x~^n, x~^m> = delta n!/p^n.
template <class T>
CheckReport check_dual_norms(const ParameterSet<T>& kappa, int N, double eps = kDefaultEps);

/// act([b, c], f) = act(b, act(c, f)) - act(c, act(b, f)) on `samples`
/// pseudo-random triples drawn from a fixed seed.
template <class T>
CheckReport check_representation(const ParameterSet<T>& kappa, int N, int samples = 50,
                                 double eps = kDefaultEps);

/// H~ moves x^lambda only to lambda and its adjacent points, and H moves
/// x~^lambda likewise; also the diagonal coefficients of both expansions.
template <class T>
CheckReport check_adjacency(const ParameterSet<T>& kappa, int N, double eps = kDefaultEps);

/// x~^n~ = N! sum_n P(n', n~') p~^n / n! x^n and
/// x^n / nu^N = N! sum_n~ P(n', n~') p^n~ / n~! x~^n~, as polynomial identities.
template <class T>
CheckReport check_transition(const ParameterSet<T>& kappa, int N, double eps = kDefaultEps);

/// True when lambda - mu is a permutation of (1, -1, 0, ..., 0).
bool adjacent(const MultiIndex& lambda, const MultiIndex& mu);

}  // namespace kraw

#endif  // KRAW_LIEMOD_HPP
