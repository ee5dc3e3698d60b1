#include "leg/exact/serialize.hpp"

namespace leg {

namespace {

std::string rational_str(const Q& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

}  // namespace

nlohmann::json to_json(const QPoly& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : p.coeffs()) a.push_back(rational_str(c));
  return a;
}

nlohmann::json to_json(const ZPoly& p) { return to_json(to_qpoly(p)); }

nlohmann::json to_json(const RatFunc& r) { return {{"num", to_json(r.num())}, {"den", to_json(r.den())}}; }

nlohmann::json to_json(const FFElement& x) {
  return {{"a", to_json(x.a())}, {"b", to_json(x.b())}, {"modulus", to_json(x.modulus())}};
}

QPoly qpoly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial JSON must be an array");
  std::vector<Q> v;
  for (const auto& e : j) {
    Q q;
    if (e.is_string()) {
      if (q.set_str(e.get<std::string>(), 10) != 0) throw std::invalid_argument("bad rational '" + e.get<std::string>() + "'");
    } else if (e.is_number_integer()) {
      q = Q(Z(std::to_string(e.get<long long>())));
    } else {
      throw std::invalid_argument("polynomial coefficients must be strings");
    }
    q.canonicalize();
    v.push_back(q);
  }
  return QPoly(std::move(v));
}

RatFunc ratfunc_from_json(const nlohmann::json& j) {
  return RatFunc(qpoly_from_json(j.at("num")), qpoly_from_json(j.at("den")));
}

FFElement ffelement_from_json(const nlohmann::json& j) {
  QPoly f = qpoly_from_json(j.at("modulus"));
  return FFElement(ratfunc_from_json(j.at("a")), ratfunc_from_json(j.at("b")), to_zpoly(f));
}

}  // namespace leg
