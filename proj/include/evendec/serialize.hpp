#pragma once

// JSON wire formats. Witnesses serialize as an array of steps, each a sorted
// vertex list; orderings as plain integer arrays. Both round-trip exactly.

#include <string>
#include <vector>

#include <json.hpp>

#include "evendec/degeneracy.hpp"
#include "evendec/exact.hpp"
#include "evendec/graph.hpp"
#include "evendec/witness.hpp"

namespace evendec {

inline nlohmann::json vertexset_to_json(VertexSet s) { return nlohmann::json(s.to_vector()); }

inline VertexSet vertexset_from_json(const nlohmann::json& j) {
    VertexSet s;
    for (const auto& v : j) {
        int x = v.get<int>();
        if (x < 0 || x >= kMaxVertices) throw std::invalid_argument("vertex out of range in JSON");
        s = s.with(x);
    }
    return s;
}

inline nlohmann::json witness_to_json(const DecompositionWitness& w) {
    nlohmann::json steps = nlohmann::json::array();
    for (VertexSet s : w.steps) steps.push_back(vertexset_to_json(s));
    return steps;
}

// The wire format carries only the steps; the initial set is their union.
inline DecompositionWitness witness_from_json(const nlohmann::json& j) {
    DecompositionWitness w;
    for (const auto& step : j) {
        VertexSet s = vertexset_from_json(step);
        w.steps.push_back(s);
        w.initial = w.initial | s;
    }
    return w;
}

inline nlohmann::json ordering_to_json(const Ordering& o) { return nlohmann::json(o); }

inline Ordering ordering_from_json(const nlohmann::json& j) { return j.get<Ordering>(); }

inline nlohmann::json census_to_json(const CensusReport& r) {
    nlohmann::json j{{"n", r.n},
                     {"total_graphs", r.total_graphs},
                     {"even_edge_count", r.even_edge_count}};
    if (r.decomposability) {
        j["even_decomposable_count"] = r.even_decomposable_count;
        j["even_non_decomposable_count"] = r.even_non_decomposable_count;
    }
    if (r.degeneracy) {
        j["even_degenerate_count"] = r.even_degenerate_count;
        j["non_even_degenerate_count"] = r.non_even_degenerate_count;
    }
    auto exemplars = nlohmann::json::object();
    if (!r.exemplars_even_decomposable.empty()) exemplars["even_decomposable"] = r.exemplars_even_decomposable;
    if (!r.exemplars_even_non_decomposable.empty())
        exemplars["even_non_decomposable"] = r.exemplars_even_non_decomposable;
    if (!r.exemplars_even_degenerate.empty()) exemplars["even_degenerate"] = r.exemplars_even_degenerate;
    if (!r.exemplars_non_even_degenerate.empty())
        exemplars["non_even_degenerate"] = r.exemplars_non_even_degenerate;
    if (!exemplars.empty()) j["exemplars"] = exemplars;
    return j;
}

inline constexpr const char* kCensusCsvHeader =
    "n,total_graphs,even_edge_count,even_decomposable_count,even_non_decomposable_count,"
    "even_degenerate_count,non_even_degenerate_count";

inline std::string census_to_csv_row(const CensusReport& r) {
    auto opt = [](bool present, std::uint64_t v) { return present ? std::to_string(v) : std::string(); };
    return std::to_string(r.n) + "," + std::to_string(r.total_graphs) + "," +
           std::to_string(r.even_edge_count) + "," + opt(r.decomposability, r.even_decomposable_count) +
           "," + opt(r.decomposability, r.even_non_decomposable_count) + "," +
           opt(r.degeneracy, r.even_degenerate_count) + "," + opt(r.degeneracy, r.non_even_degenerate_count);
}

inline nlohmann::json outcome_to_json(const EngineOutcome& o) {
    nlohmann::json j{{"status", to_string(o.status)}};
    switch (o.status) {
        case EngineStatus::Decomposed: j["witness"] = witness_to_json(o.witness); break;
        case EngineStatus::Stuck: j["stuck"] = vertexset_to_json(o.stuck); break;
        case EngineStatus::ConditionUnmet: j["condition"] = o.condition; break;
        case EngineStatus::CertifiedNonDecomposable: break;
    }
    return j;
}

} // namespace evendec
