#pragma once

#include <sstream>

#include <json.hpp>

#include "cdc/chain.hpp"
#include "cdc/complex.hpp"
#include "cdc/molecule.hpp"
#include "cdc/omega.hpp"
#include "cdc/rewrite.hpp"
#include "cdc/topology.hpp"

namespace cdc {

using Json = nlohmann::json;

struct Document {
    Complex complex;
    std::optional<Bits> subset;

    const Bits& subset_or_all(Bits& storage) const {
        if (subset) return *subset;
        storage = complex.full_set();
        return storage;
    }
};

inline Document parse_document(const Json& j) {
    if (!j.is_object() || !j.contains("elements"))
        fail(errc::bad_params, "document must be an object with an 'elements' array");
    std::vector<ElementData> elems;
    for (const auto& e : j.at("elements"))
        elems.push_back({e.at("id").get<std::string>(), e.at("dim").get<int>()});
    std::vector<CoverData> covers;
    if (j.contains("covers"))
        for (const auto& c : j.at("covers")) {
            std::string s = c.at("sign").get<std::string>();
            if (s != "+" && s != "-")
                fail(errc::bad_params, "cover sign must be '+' or '-'");
            covers.push_back({c.at("upper").get<std::string>(), c.at("lower").get<std::string>(),
                              s == "+" ? Sign::plus : Sign::minus});
        }
    Document doc{Complex::validate(elems, covers), std::nullopt};
    if (j.contains("subset")) {
        Bits b = doc.complex.empty_set();
        for (const auto& id : j.at("subset"))
            b.set(static_cast<std::size_t>(doc.complex.require(id.get<std::string>())));
        if (!is_closed(doc.complex, b))
            fail(errc::bad_params, "'subset' must be downward closed");
        doc.subset = b;
    }
    return doc;
}

inline Document parse_document(const std::string& text) {
    Json j = Json::parse(text, nullptr, true, true);
    return parse_document(j);
}

namespace detail {
inline std::vector<int> display_order(const Complex& p) {
    std::vector<int> order(static_cast<std::size_t>(p.size()));
    for (int i = 0; i < p.size(); ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (p.dim(a) != p.dim(b)) return p.dim(a) < p.dim(b);
        return p.name(a) < p.name(b);
    });
    return order;
}
} // namespace detail

inline Json to_json(const Complex& p, const std::optional<Bits>& subset = std::nullopt) {
    Json j;
    j["elements"] = Json::array();
    for (int i : detail::display_order(p))
        j["elements"].push_back({{"id", p.name(i)}, {"dim", p.dim(i)}});
    j["covers"] = Json::array();
    for (int u : detail::display_order(p))
        for (const auto& [l, s] : p.lower_covers(u))
            j["covers"].push_back({{"upper", p.name(u)},
                                   {"lower", p.name(l)},
                                   {"sign", std::string(1, sign_char(s))}});
    if (subset) {
        std::vector<std::string> ids;
        subset->for_each([&](std::size_t i) { ids.push_back(p.name(static_cast<int>(i))); });
        std::sort(ids.begin(), ids.end());
        j["subset"] = ids;
    }
    return j;
}

inline Json subset_ids(const Complex& p, const Bits& u) {
    std::vector<std::string> ids;
    u.for_each([&](std::size_t i) { ids.push_back(p.name(static_cast<int>(i))); });
    std::sort(ids.begin(), ids.end());
    return Json(ids);
}

inline Json to_json(const Complex& p, const MergerTree& t, int node) {
    const auto& nd = t.arena[static_cast<std::size_t>(node)];
    Json j;
    j["node"] = subset_ids(p, nd.subset);
    if (nd.left >= 0)
        j["children"] = Json::array({to_json(p, t, nd.left), to_json(p, t, nd.right)});
    return j;
}

inline Json to_json(const Complex& p, const MergerTree& t) { return to_json(p, t, t.root); }

inline Json to_json(const Complex& p, const CompositionTree& t, int node) {
    const auto& nd = t.arena[static_cast<std::size_t>(node)];
    Json j;
    j["node"] = subset_ids(p, nd.subset);
    if (nd.left >= 0) {
        j["k"] = nd.k;
        j["children"] = Json::array({to_json(p, t, nd.left), to_json(p, t, nd.right)});
    }
    return j;
}

inline Json to_json(const Complex& p, const CompositionTree& t) { return to_json(p, t, t.root); }

inline Json to_json(const MergerSequence& seq) {
    Json steps = Json::array();
    for (const auto& s : seq.steps)
        steps.push_back({{"removed", s.removed},
                         {"identified", Json::array({s.merged_first, s.merged_second})},
                         {"to", s.result}});
    return steps;
}

inline Json to_json(const Adc& K) {
    Json j;
    j["basis"] = K.basis;
    Json mats = Json::array();
    for (int k = 1; k <= K.top_degree(); ++k) mats.push_back(K.d[static_cast<std::size_t>(k)]);
    j["boundaries"] = mats;
    j["augmentation"] = K.augmentation;
    return j;
}

inline Json to_json(const Complex& p, const SimplicialComplex& s) {
    Json j;
    j["f_vector"] = s.f_vector();
    j["euler_characteristic"] = s.euler_characteristic();
    Json levels = Json::array();
    for (const auto& level : s.simplices) {
        Json tuples = Json::array();
        for (const auto& simplex : level) {
            std::vector<std::string> ids;
            for (int v : simplex) ids.push_back(p.name(v));
            tuples.push_back(ids);
        }
        levels.push_back(tuples);
    }
    j["simplices"] = levels;
    return j;
}

inline Json to_json(const HomologyResult& h) {
    Json j;
    j["reduced_betti"] = h.betti;
    j["torsion"] = h.torsion;
    return j;
}

/// One node per element annotated with its dimension, one edge per cover
/// labelled with its sign, drawn upper -> lower.
inline std::string to_dot(const Complex& p) {
    std::ostringstream os;
    os << "digraph complex {\n";
    for (int i : detail::display_order(p))
        os << "  \"" << p.name(i) << "\" [label=\"" << p.name(i) << " (" << p.dim(i)
           << ")\"];\n";
    for (int u : detail::display_order(p))
        for (const auto& [l, s] : p.lower_covers(u))
            os << "  \"" << p.name(u) << "\" -> \"" << p.name(l) << "\" [label=\""
               << sign_char(s) << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace cdc
