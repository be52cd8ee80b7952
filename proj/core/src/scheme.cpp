#include "bpdg/scheme.hpp"

#include <stdexcept>

namespace bpdg {

std::string to_string(FluxVariant v) {
  switch (v) {
    case FluxVariant::UpwindPlus:
      return "upwind+";
    case FluxVariant::UpwindMinus:
      return "upwind-";
    case FluxVariant::Central:
      return "central";
  }
  return "?";
}

FluxVariant parse_flux_variant(const std::string& s) {
  if (s == "upwind+") return FluxVariant::UpwindPlus;
  if (s == "upwind-") return FluxVariant::UpwindMinus;
  if (s == "central") return FluxVariant::Central;
  throw std::invalid_argument("unknown flux variant '" + s + "'");
}

double FluxPair::plus_weight() const {
  switch (variant) {
    case FluxVariant::UpwindPlus:
      return 1.0;
    case FluxVariant::UpwindMinus:
      return 0.0;
    case FluxVariant::Central:
      return 0.5;
  }
  return 1.0;
}

double FluxPair::minus_weight() const { return 1.0 - plus_weight(); }

double FluxPair::velocity(const Trace& u) const {
  switch (variant) {
    case FluxVariant::UpwindPlus:
      return u.plus;
    case FluxVariant::UpwindMinus:
      return u.minus;
    case FluxVariant::Central:
      return u.average();
  }
  return u.plus;
}

double FluxPair::pressure(const Trace& p) const {
  switch (variant) {
    case FluxVariant::UpwindPlus:
      return p.minus;
    case FluxVariant::UpwindMinus:
      return p.plus;
    case FluxVariant::Central:
      return p.average();
  }
  return p.minus;
}

double FluxPair::convection(const Trace& u, const Trace& c, double alpha) const {
  switch (variant) {
    case FluxVariant::UpwindPlus:
      return u.plus * c.plus - alpha * c.jump();
    case FluxVariant::UpwindMinus:
      return u.minus * c.minus - alpha * c.jump();
    case FluxVariant::Central:
      return 0.5 * (u.plus * c.plus + u.minus * c.minus) - alpha * c.jump();
  }
  return u.plus * c.plus - alpha * c.jump();
}

double FluxPair::coeff_plus(const Trace& u, double alpha) const {
  return plus_weight() * u.plus - alpha;
}

double FluxPair::coeff_minus(const Trace& u, double alpha) const {
  return minus_weight() * u.minus + alpha;
}

double numerical_flux_uc(const Trace& u, const Trace& c, double alpha, FluxVariant variant) {
  return FluxPair{variant}.convection(u, c, alpha);
}

}  // namespace bpdg
