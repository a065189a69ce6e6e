#include "maxmod/serialize.hpp"

#include <charconv>

namespace maxmod {

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2) throw InvalidSpec("complex must be [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json to_json(const ComplexPoly& p) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < p.coeffs().size(); ++i) arr.push_back(to_json(p.coeffs()[i]));
  return arr;
}

ComplexPoly poly_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InvalidSpec("polynomial must be a nonempty array");
  CVec c(j.size());
  for (size_t i = 0; i < j.size(); ++i) c[i] = complex_from_json(j[i]);
  return ComplexPoly(std::move(c));
}

Json to_json(const RecurrenceSpec& spec) {
  Json coeffs = Json::array();
  for (const auto& r : spec.coeffs) {
    if (r.kind == CoeffRule::Kind::Fixed) {
      coeffs.push_back(Json{{"fixed", to_json(r.limit)}});
    } else {
      Json v{{"limit", to_json(r.limit)}, {"rule", r.rule_name}};
      if (r.rule_name == "limit_plus_cn_over_n") v["c"] = to_json(r.c);
      if (r.rule_name == "table") {
        Json t = Json::array();
        for (const auto& p : r.table) t.push_back(to_json(p));
        v["table"] = t;
      }
      coeffs.push_back(Json{{"varying", v}});
    }
  }
  return Json{{"k", spec.k}, {"coeffs", coeffs}};
}

RecurrenceSpec recurrence_from_json(const Json& j) {
  RecurrenceSpec spec;
  if (!j.contains("k") || !j.contains("coeffs")) throw InvalidSpec("spec needs k and coeffs");
  spec.k = j["k"].get<int>();
  for (const auto& c : j["coeffs"]) {
    if (c.contains("fixed")) {
      spec.coeffs.push_back(CoeffRule::fixed(poly_from_json(c["fixed"])));
    } else if (c.contains("varying")) {
      const Json& v = c["varying"];
      std::string rule = v.value("rule", "constant");
      CoeffRule r;
      r.kind = CoeffRule::Kind::Varying;
      r.rule_name = rule;
      r.limit = poly_from_json(v.at("limit"));
      if (rule == "limit_plus_cn_over_n") r.c = complex_from_json(v.at("c"));
      if (rule == "table")
        for (const auto& t : v.at("table")) r.table.push_back(poly_from_json(t));
      spec.coeffs.push_back(std::move(r));
    } else {
      throw InvalidSpec("coefficient rule must be fixed or varying");
    }
  }
  spec.validate();
  return spec;
}

Json to_json(const SymbolEquation& sym) {
  Json phi = Json::array();
  for (const auto& p : sym.phi) phi.push_back(to_json(p));
  return Json{{"k", sym.k}, {"phi", phi}};
}

SymbolEquation symbol_from_json(const Json& j) {
  SymbolEquation sym;
  if (j.contains("q1") && j.contains("q2")) {
    return SymbolEquation::from_q_form(poly_from_json(j["q1"]), poly_from_json(j["q2"]));
  }
  sym.k = j.at("k").get<int>();
  for (const auto& p : j.at("phi")) sym.phi.push_back(poly_from_json(p));
  sym.validate();
  return sym;
}

GridSpec grid_from_json(const Json& j) {
  GridSpec g;
  g.re0 = j.at("re")[0].get<double>();
  g.re1 = j.at("re")[1].get<double>();
  g.im0 = j.at("im")[0].get<double>();
  g.im1 = j.at("im")[1].get<double>();
  if (j.at("n").is_array()) {
    g.nre = j["n"][0].get<int>();
    g.nim = j["n"][1].get<int>();
  } else {
    g.nre = g.nim = j["n"].get<int>();
  }
  if (g.nre < 2 || g.nim < 2) throw InvalidSpec("grid counts must be >= 2");
  return g;
}

Json to_json(const GridSpec& g) {
  return Json{{"re", {g.re0, g.re1}}, {"im", {g.im0, g.im1}}, {"n", {g.nre, g.nim}}};
}

Json to_json(const ResidueMeasure& m) {
  Json atoms = Json::array();
  for (const auto& a : m.atoms)
    atoms.push_back(Json{{"pole", to_json(a.pole)}, {"weight", to_json(a.weight)}});
  return atoms;
}

std::uint64_t config_hash(const Json& config) {
  std::string s = config.dump();  // nlohmann keeps keys sorted
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace maxmod
