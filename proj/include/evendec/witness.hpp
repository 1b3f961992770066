#pragma once

// Removal witnesses and the independent replay verifier.
//
// A witness is an ordered list of removal steps starting from the full vertex
// set. Every success any producer reports is replayed through verify_witness,
// which is deliberately self-contained (raw adjacency loops) so it shares no
// code path with the machinery that constructed the witness.

#include <cassert>
#include <string>
#include <vector>

#include "evendec/graph.hpp"

namespace evendec {

// S is a simple admissible removal from the remaining graph G[W]: nonempty,
// independent, and with an even number of edges to W \ S.
inline bool is_simple_admissible(const Graph& g, VertexSet w, VertexSet s) {
    assert(s.subset_of(w) && w.subset_of(g.vertices()));
    if (s.empty()) return false;
    int cross = 0;
    for (int v : s) {
        VertexSet nb = g.neighbors(v);
        if (!(nb & s).empty()) return false;
        cross += (nb & (w - s)).count();
    }
    return (cross & 1) == 0;
}

struct DecompositionWitness {
    VertexSet initial;
    std::vector<VertexSet> steps;
};

inline bool verify_witness(const Graph& g, const DecompositionWitness& w, std::string* reason = nullptr) {
    auto fail = [&](const char* msg) {
        if (reason) *reason = msg;
        return false;
    };
    if (w.initial != g.vertices()) return fail("initial set is not V(G)");
    {
        int twice = 0;
        for (int v = 0; v < g.vertex_count(); ++v) twice += g.neighbors(v).count();
        if ((twice / 2) % 2 != 0) return fail("odd edge count");
    }
    VertexSet remaining = w.initial;
    for (const VertexSet& s : w.steps) {
        if (s.empty()) return fail("empty step");
        if (!s.subset_of(remaining)) return fail("step not within remaining set");
        long cross = 0;
        for (int u : s) {
            for (int v : g.neighbors(u)) {
                if (s.contains(v)) return fail("step is not an independent set");
                if (remaining.contains(v)) ++cross;
            }
        }
        if (cross % 2 != 0) return fail("odd edge count between step and rest");
        remaining = remaining - s;
    }
    if (!remaining.empty()) return fail("leftover vertices after final step");
    if (reason) reason->clear();
    return true;
}

enum class EngineStatus { Decomposed, Stuck, ConditionUnmet, CertifiedNonDecomposable };

inline const char* to_string(EngineStatus s) {
    switch (s) {
        case EngineStatus::Decomposed: return "decomposed";
        case EngineStatus::Stuck: return "stuck";
        case EngineStatus::ConditionUnmet: return "condition-unmet";
        case EngineStatus::CertifiedNonDecomposable: return "certified-non-decomposable";
    }
    return "?";
}

struct EngineOutcome {
    EngineStatus status = EngineStatus::ConditionUnmet;
    DecompositionWitness witness; // set when Decomposed
    VertexSet stuck;              // set when Stuck: remaining all-odd clique
    std::string condition;        // set when ConditionUnmet
    std::vector<std::string> trace;

    static EngineOutcome decomposed(DecompositionWitness w, std::vector<std::string> trace = {}) {
        EngineOutcome o;
        o.status = EngineStatus::Decomposed;
        o.witness = std::move(w);
        o.trace = std::move(trace);
        return o;
    }
    static EngineOutcome stuck_at(VertexSet rest, std::vector<std::string> trace = {}) {
        EngineOutcome o;
        o.status = EngineStatus::Stuck;
        o.stuck = rest;
        o.trace = std::move(trace);
        return o;
    }
    static EngineOutcome unmet(std::string cond, std::vector<std::string> trace = {}) {
        EngineOutcome o;
        o.status = EngineStatus::ConditionUnmet;
        o.condition = std::move(cond);
        o.trace = std::move(trace);
        return o;
    }
    static EngineOutcome certified_negative(std::vector<std::string> trace = {}) {
        EngineOutcome o;
        o.status = EngineStatus::CertifiedNonDecomposable;
        o.trace = std::move(trace);
        return o;
    }
};

} // namespace evendec
