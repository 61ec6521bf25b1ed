#pragma once

#include "orlicz/compop.hpp"

namespace orlicz {

struct WeightedCompositionSpec {
  SimpleFunction u;
  Transformation phi;
  double p = 2.0;
  double q = 2.0;
};

/// (sum |f|^p mu)^(1/p); +inf when the series diverges.
/// Throws UnresolvedTail when the tail has no closed form.
double lp_norm(const MeasureSpace& X, const SimpleFunction& f, double p);

/// |f|^q atomwise; the tail stays resolved only for disjoint tail terms.
SimpleFunction abs_power(const SimpleFunction& f, double q);

struct MultiplicationReport {
  double composed = 0.0;     // ||f o phi||_p
  double multiplied = 0.0;   // ||h^(1/p) f||_p
  double split = 0.0;        // ||f||_p^p + ||f o phi||_p^p
  double weighted = 0.0;     // sum |f|^p (1 + h) mu
  bool norms_agree = false;
  bool identity_holds = false;
};
MultiplicationReport multiplication_equivalence_check(const SimpleFunction& f,
                                                      const Transformation& phi, double p,
                                                      double tol = 1e-12);

DomainVerdict lp_density_verdict(const Transformation& phi, double p);

/// J = h E(|u|^q) o phi^-1, realized per fiber; 0 on empty fibers.
SimpleFunction weighted_comp_index(const WeightedCompositionSpec& spec);

/// ||u (f o phi)||_q^q and sum J |f|^q mu for a sample f.
struct WeightedNormReport {
  double direct = 0.0;
  double via_index = 0.0;
  bool agree = false;
};
WeightedNormReport weighted_norm_check(const WeightedCompositionSpec& spec, const SimpleFunction& f,
                                       double tol = 1e-12);

DomainVerdict weighted_density_verdict(const WeightedCompositionSpec& spec);

}  // namespace orlicz
