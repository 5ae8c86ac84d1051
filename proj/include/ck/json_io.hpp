#ifndef CK_JSON_IO_HPP
#define CK_JSON_IO_HPP

#include <json.hpp>

#include <fstream>

#include "ck/alpha.hpp"
#include "ck/cones.hpp"
#include "ck/criteria.hpp"
#include "ck/sweep.hpp"

namespace ck {

using json = nlohmann::json;

struct DataFileError : std::runtime_error {
  explicit DataFileError(const std::string& what) : std::runtime_error(what) {}
};

inline std::int64_t to_i64(const Int& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer too large for the JSON report schema");
  return static_cast<std::int64_t>(v);
}

// {"a":..,"b":..,"d":..,"q":..} for (a + b sqrt(d))/q in canonical form, with
// the decimal approximation alongside.
inline json to_json(const ExactScalar& x) {
  Int a, b, q;
  std::int64_t d;
  x.canonical(a, b, d, q);
  return json{{"a", to_i64(a)}, {"b", to_i64(b)}, {"d", d}, {"q", to_i64(q)},
              {"text", x.str()}, {"approx", x.approx()}};
}

inline ExactScalar exact_from_json(const json& j) {
  if (j.is_string()) return ExactScalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return ExactScalar(j.get<std::int64_t>());
  if (j.is_object()) {
    Int a = j.at("a").get<std::int64_t>();
    Int b = j.value("b", std::int64_t{0});
    std::int64_t d = j.value("d", std::int64_t{0});
    Int q = j.value("q", std::int64_t{1});
    if (q <= 0) throw DataFileError("nonpositive denominator in exact scalar");
    if (b == 0 || d == 0) return ExactScalar(Rat(a, q));
    Int m, sf;
    extract_square_factor(Int(d), m, sf);
    return ExactScalar(Rat(a, q), Rat(b * m, q), static_cast<std::int64_t>(sf));
  }
  throw DataFileError("cannot read exact scalar from " + j.dump());
}

inline json to_json(const DivisorClass& D) {
  json coeffs = json::array();
  for (Eigen::Index i = 0; i < D.coeffs.size(); ++i) coeffs.push_back(to_json(D.coeffs[i]));
  json j{{"surface", D.surface.name()}, {"coeffs", coeffs}};
  if (D.surface.kind == SurfaceSpec::Kind::BlowupPlane) j["k"] = D.surface.k;
  return j;
}

inline json to_json(const CurveClass& C) {
  const char* role = C.role == CurveRole::MinusOne ? "minus-one-curve"
                     : C.role == CurveRole::Fiber  ? "fiber-class"
                                                   : "line-class";
  return json{{"class", to_json(C.cls)}, {"role", role}};
}

inline json to_json(const ConeTestResult& r) {
  json j{{"verdict", to_string(r.verdict)}, {"margin", to_json(r.margin)}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j;
}

inline json to_json(const Interval& iv) {
  return json{{"lo", iv.lo.str()}, {"hi", iv.hi.str()},
              {"lo_closed", iv.lo_closed}, {"hi_closed", iv.hi_closed}};
}

inline json to_json(const IntervalSet& s) {
  json parts = json::array();
  for (const auto& iv : s.parts()) parts.push_back(to_json(iv));
  return json{{"parts", parts}, {"text", s.str()}};
}

inline json to_json(const CriterionVerdict& v) {
  json clauses = json::array();
  for (const auto& c : v.conditions)
    clauses.push_back(json{{"name", c.name},
                           {"value", to_json(c.value)},
                           {"bound", to_json(c.bound)},
                           {"strict", c.strict},
                           {"margin", to_json(c.margin)},
                           {"holds", c.holds}});
  json j{{"criterion", to_string(v.criterion)}, {"holds", v.holds}, {"conditions", clauses}};
  if (v.witness) j["witness"] = to_json(*v.witness);
  if (v.epsilon_witness) j["epsilon_witness"] = to_json(*v.epsilon_witness);
  return j;
}

inline json to_json(const QuadraticPoly& p) {
  auto rs = [](const Rat& r) {
    std::string s = boost::multiprecision::numerator(r).str();
    if (boost::multiprecision::denominator(r) != 1)
      s += "/" + boost::multiprecision::denominator(r).str();
    return s;
  };
  return json{{"c2", rs(p.c2)}, {"c1", rs(p.c1)}, {"c0", rs(p.c0)}};
}

inline json to_json(const SweepReport& rep) {
  json clauses = json::array();
  for (const auto& c : rep.clauses) {
    json cj{{"name", c.name}, {"poly", to_json(c.poly)}, {"strict", c.strict}};
    if (c.witness) cj["witness"] = to_json(*c.witness);
    clauses.push_back(cj);
  }
  json binding = json::array();
  for (const auto& c : rep.binding) {
    json cj{{"name", c.name}, {"poly", to_json(c.poly)}};
    if (c.witness) cj["witness"] = to_json(*c.witness);
    binding.push_back(cj);
  }
  return json{{"criterion", to_string(rep.criterion)},
              {"satisfied", to_json(rep.satisfied)},
              {"ample_range", to_json(rep.ample)},
              {"clauses", clauses},
              {"binding", binding}};
}

inline Bound bound_from_json(const json& j) {
  std::string s = j.get<std::string>();
  if (s == "-inf") return Bound::neg_inf();
  if (s == "+inf" || s == "inf") return Bound::pos_inf();
  return Bound::finite(ExactScalar::parse(s));
}

// Alpha model file: {"family": {...}?, "invariance": "plain"|"group-invariant",
// "provenance": "...", "pieces": [{"interval":[lo,hi], "open":[bool,bool]?,
// "num":[c2,c1,c0], "den":[c2,c1,c0]}]}.
inline AlphaModel alpha_model_from_json(const json& j) {
  AlphaModel m;
  try {
    m.provenance = j.value("provenance", std::string{});
    m.group_invariant = j.value("invariance", std::string{"plain"}) == "group-invariant";
    if (j.contains("family")) {
      const json& f = j.at("family");
      SurfaceSpec s = SurfaceSpec::from_name(f.at("surface").get<std::string>());
      auto vec = [&](const json& arr) {
        ExactVec v(s.rank());
        if (static_cast<int>(arr.size()) != s.rank())
          throw DataFileError("family coefficient arity mismatch");
        for (int i = 0; i < s.rank(); ++i) v[i] = exact_from_json(arr[i]);
        return v;
      };
      DivisorClass base{s, vec(f.at("base"))};
      DivisorClass dir{s, vec(f.at("dir"))};
      m.family = make_pencil(base, dir);
    }
    for (const json& pj : j.at("pieces")) {
      AlphaModel::Piece p;
      const json& iv = pj.at("interval");
      p.domain.lo = bound_from_json(iv.at(0));
      p.domain.hi = bound_from_json(iv.at(1));
      p.domain.lo_closed = false;
      p.domain.hi_closed = false;
      if (pj.contains("closed")) {
        p.domain.lo_closed = pj.at("closed").at(0).get<bool>();
        p.domain.hi_closed = pj.at("closed").at(1).get<bool>();
      }
      auto poly3 = [](const json& arr, ExactScalar& c2, ExactScalar& c1, ExactScalar& c0) {
        if (arr.size() != 3) throw DataFileError("expected [c2, c1, c0]");
        c2 = exact_from_json(arr[0]);
        c1 = exact_from_json(arr[1]);
        c0 = exact_from_json(arr[2]);
      };
      poly3(pj.at("num"), p.value.n2, p.value.n1, p.value.n0);
      poly3(pj.at("den"), p.value.d2, p.value.d1, p.value.d0);
      m.pieces.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw DataFileError(std::string("malformed alpha model: ") + e.what());
  }
  return m;
}

inline AlphaModel load_alpha_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataFileError("cannot open alpha model file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataFileError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return alpha_model_from_json(j);
}

}  // namespace ck

#endif  // CK_JSON_IO_HPP
