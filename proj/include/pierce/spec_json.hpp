#pragma once

// JSON form of set specifications:
//   {"family": "E_phi", "params": {"alpha": "3/2"}, "profile": {"kind": "exponential", "a": 3}}
// Numbers may be JSON integers or strings ("p/q", "1.25", "inf").

#include <string>

#include "json.hpp"
#include "pierce/sets.hpp"

namespace pierce {

using Json = nlohmann::json;

inline Rational json_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<long long>())));
  if (j.is_number_unsigned()) return Rational(BigInt(std::to_string(j.get<unsigned long long>())));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float()) {
    // exact binary value of the double; strings avoid the rounding
    Rational q;
    mpq_set_d(q.get_mpq_t(), j.get<double>());
    return q;
  }
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

inline ExtReal json_ext_real(const Json& j) {
  if (j.is_string()) return parse_ext_real(j.get<std::string>());
  return ExtReal::finite(json_rational(j));
}

inline Rational json_rational_or(const Json& obj, const char* key, const Rational& fallback) {
  return obj.contains(key) ? json_rational(obj.at(key)) : fallback;
}

inline NamedProfile profile_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw std::invalid_argument("profile needs a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  auto n = GrowthProfile::index();
  auto generic = [&](GrowthProfile p) {
    return NamedProfile{std::move(p), ProfileInfo{kind, "generic", "", std::nullopt, std::nullopt, std::nullopt, std::nullopt}};
  };
  if (kind == "sqrt") return catalog::sqrt_phi();
  if (kind == "square") return catalog::square_phi();
  if (kind == "nlog") return catalog::nlog_phi(json_rational(j.at("a")));
  if (kind == "exponential")
    return catalog::exponential_phi(json_rational(j.at("a")), json_rational_or(j, "c", Rational(1)));
  if (kind == "power") return catalog::power_phi(json_rational(j.at("a")), json_rational_or(j, "c", Rational(1)));
  if (kind == "log") return catalog::log_phi(json_rational_or(j, "c", Rational(1)));
  if (kind == "lil") return catalog::lil_psi();
  if (kind == "power_psi") return catalog::power_psi(json_rational(j.at("a")));
  if (kind == "geometric_u") return catalog::geometric_u(json_rational(j.at("a")));
  if (kind == "exp_sqrt_u") return catalog::exp_sqrt_u();
  if (kind == "exp_square_u") return catalog::exp_square_u();
  if (kind == "u_from_phi") return catalog::u_from_phi(profile_from_json(j.at("phi")));
  if (kind == "constant") return generic(GrowthProfile::constant(json_rational(j.at("c"))));
  if (kind == "linear")
    return generic(json_rational_or(j, "a", Rational(1)) * n + json_rational_or(j, "b", Rational(0)));
  if (kind == "table") {
    std::vector<Rational> v;
    for (const auto& x : j.at("values")) v.push_back(json_rational(x));
    return generic(GrowthProfile::table(std::move(v)));
  }
  if (kind == "exp") {
    NamedProfile inner = profile_from_json(j.at("inner"));
    return generic(exp(json_rational_or(j, "scale", Rational(1)) * inner.profile + json_rational_or(j, "shift", Rational(0))));
  }
  if (kind == "composite") {
    // n + beta psi(n)
    NamedProfile psi = profile_from_json(j.at("psi"));
    return generic(n + json_rational(j.at("beta")) * psi.profile);
  }
  if (kind == "scaled") {
    // c * profile
    NamedProfile inner = profile_from_json(j.at("inner"));
    return generic(json_rational(j.at("c")) * inner.profile);
  }
  throw std::invalid_argument("unknown profile kind '" + kind + "'");
}

inline DigitMap digit_map_from_json(const Json& j) {
  const std::string kind = j.value("kind", "affine");
  if (kind == "affine") return DigitMap::affine(json_rational_or(j, "a", Rational(1)), json_rational_or(j, "b", Rational(0)));
  if (kind == "power") return DigitMap::power(json_rational(j.at("p")), json_rational_or(j, "c", Rational(1)));
  throw std::invalid_argument("unknown digit map kind '" + kind + "'");
}

inline SetSpec set_spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("family")) throw std::invalid_argument("set spec needs a \"family\"");
  SetSpec s;
  s.family = parse_family(j.at("family").get<std::string>());
  Json params = j.value("params", Json::object());
  if (params.contains("alpha")) s.alpha = json_ext_real(params.at("alpha"));
  if (params.contains("beta")) s.beta = json_ext_real(params.at("beta"));
  if (params.contains("kappa")) s.kappa = json_ext_real(params.at("kappa"));
  if (j.contains("profile")) s.profile = profile_from_json(j.at("profile"));
  if (s.family == Family::E_bounds) {
    if (!j.contains("l") || !j.contains("r")) throw std::invalid_argument("E_bounds needs \"l\" and \"r\" profiles");
    s.bounds = BoundsProfile::from_pair(profile_from_json(j.at("l")).profile, profile_from_json(j.at("r")).profile, "E_bounds");
  }
  if (s.family == Family::S_generic) {
    s.h1 = digit_map_from_json(params.at("h1"));
    s.h2 = digit_map_from_json(params.value("h2", Json{{"kind", "affine"}}));
    s.h3 = digit_map_from_json(params.at("h3"));
    s.m = params.value("m", 1L);
  }
  bool needs_profile = s.family == Family::E_phi || s.family == Family::C_psi_beta || s.family == Family::E_star;
  if (needs_profile && !s.profile) throw std::invalid_argument(to_string(s.family) + " needs a \"profile\"");
  if (s.family == Family::E_alpha_beta && !s.alpha.is_finite())
    throw std::invalid_argument("E_alpha_beta needs a finite alpha");
  return s;
}

}  // namespace pierce
