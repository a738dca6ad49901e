#pragma once

#include <sn/geometry.hpp>
#include <sn/parser.hpp>
#include <sn/poisson.hpp>

#include <json.hpp>

#include <string>

namespace sn {

// Insertion-ordered JSON keeps the documented key order in output.
using Json = nlohmann::ordered_json;

template <typename V>
Json to_json(const Alternating<V>& a) {
    Json j;
    j["kind"] = V::kind_name;
    j["dim"] = a.dim();
    j["degree"] = a.degree();
    Json terms = Json::array();
    for (const auto& [idx, c] : a.terms()) {
        Json t;
        t["index"] = idx;
        t["coeff"] = c.to_string();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline Json to_json(const Polynomial& p) {
    Json j;
    j["kind"] = "polynomial";
    j["dim"] = p.dim();
    j["value"] = p.to_string();
    return j;
}

inline Json to_json(const Value& v) {
    if (v.is_scalar()) return to_json(v.scalar());
    if (v.is_multivector()) return to_json(v.multivector());
    return to_json(v.form());
}

inline Json to_json(const PolyMap& m) {
    Json j;
    j["src"] = m.src;
    j["dst"] = m.dst;
    Json comps = Json::array();
    for (const auto& c : m.components) comps.push_back(c.to_string());
    j["components"] = std::move(comps);
    return j;
}

inline Json to_json(const PoissonReport& r) {
    Json j;
    j["poisson"] = r.poisson;
    j["schouten_square"] = to_json(r.schouten_square);
    Json samples = Json::array();
    for (const auto& s : r.jacobiator_samples) {
        Json e;
        e["f"] = s.f.to_string();
        e["g"] = s.g.to_string();
        e["h"] = s.h.to_string();
        e["value"] = s.value.to_string();
        samples.push_back(std::move(e));
    }
    j["jacobiator_samples"] = std::move(samples);
    return j;
}

namespace detail {

template <typename V>
Alternating<V> alternating_from_json(const Json& j) {
    const int dim = j.at("dim").get<int>();
    const int degree = j.at("degree").get<int>();
    Alternating<V> a(dim, degree);
    for (const auto& t : j.at("terms")) {
        IndexTuple idx = t.at("index").get<IndexTuple>();
        a.add_term(std::move(idx), parse_polynomial(t.at("coeff").get<std::string>(), dim));
    }
    return a;
}

}  // namespace detail

inline Multivector multivector_from_json(const Json& j) {
    if (j.at("kind").get<std::string>() != Contravariant::kind_name)
        throw Error("expected a multivector JSON value");
    return detail::alternating_from_json<Contravariant>(j);
}

inline Form form_from_json(const Json& j) {
    if (j.at("kind").get<std::string>() != Covariant::kind_name)
        throw Error("expected a form JSON value");
    return detail::alternating_from_json<Covariant>(j);
}

inline PolyMap polymap_from_json(const Json& j) {
    const int src = j.at("src").get<int>();
    const int dst = j.at("dst").get<int>();
    std::vector<Polynomial> comps;
    for (const auto& c : j.at("components")) comps.push_back(parse_polynomial(c.get<std::string>(), src));
    return PolyMap(src, dst, std::move(comps));
}

}  // namespace sn
