#pragma once

#include <vector>

#include "gtent/functionals.hpp"
#include "gtent/grid.hpp"
#include "gtent/measure.hpp"

namespace gtent {

double pairing(const GridFunction& f, const GridFunction& g);
// Sum of w_i f(y_i, t_i), f read at the nearest node.
double measure_pairing(const DiscreteMeasure& mu, const GridFunction& f);

struct CarlesonReport {
  double norm = 0.0;
  Ball witness;
  std::vector<double> per_ball;  // |mu|(T(B)) / gamma(B) in dictionary order
};

// Max over the dictionary of |mu|(T^{alpha,beta}(B)) / gamma(B).
CarlesonReport carleson_norm(const DiscreteMeasure& mu, const HalfSpaceGrid& grid, double alpha, double beta,
                             double delta, const BallDictionary& dict);

struct CarlesonPairingReport {
  double lhs = 0.0;       // sum |w_i| |f(y_i, t_i)|
  double carleson = 0.0;  // ||mu||_C
  double tent = 0.0;      // ||f||_{T^{1,inf}}
  double constant = 0.0;  // lhs / (carleson * tent)
  bool finite = true;
};

CarlesonPairingReport check_carleson_pairing(const DiscreteMeasure& mu, const GridFunction& f, double alpha,
                                             double beta, double delta, const BallDictionary& dict);

struct StoppingReport {
  double M = 0.0;
  double K_beta = 0.0;
  double lambda_M = 0.0;      // min over balls of the good-set density
  double lambda_theory = 0.0; // 1 - K_beta / M^{q'}
  Ball worst;
  std::vector<double> h;      // stopping time per spatial node
};

// Stopping time with M = 2 K_beta^{1/q'} and its density on every dictionary
// ball B' = B(c, alpha r ^ beta m(c)).
StoppingReport stopping_density(const GridFunction& g, double qprime, const ConeSpec& spec,
                                const BallDictionary& dict);

struct DualityOneQReport {
  double lhs = 0.0;  // pairing(|f|, |g|)
  double rhs = 0.0;  // int S_q f C_{q'} g dgamma
  double constant = 0.0;
  bool finite = true;
  StoppingReport stopping;
};

DualityOneQReport check_duality_1q(const GridFunction& f, const GridFunction& g, double q, const ConeSpec& spec,
                                   const BallDictionary& dict);

inline constexpr double kDualitySlack = 1e-6;
inline constexpr double kFubiniTolerance = 1e-12;

struct DualityPqReport {
  double lhs = 0.0;      // iint |f g|
  double fubini = 0.0;   // int S_1(|f g|) dgamma, equal to lhs
  double middle = 0.0;   // int S_q f S_{q'} g dgamma
  double rhs = 0.0;      // ||f||_{T^{p,q}} ||g||_{T^{p',q'}}
  bool fubini_ok = true;
  bool area_ok = true;
  bool holder_ok = true;
  bool pass() const { return fubini_ok && area_ok && holder_ok; }
};

DualityPqReport check_duality_pq(const GridFunction& f, const GridFunction& g, double p, double q,
                                 const ConeSpec& spec = {});

}  // namespace gtent
