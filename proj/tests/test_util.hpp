// Shared helpers for the unit tests.
#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <utility>

#include "corecrest/graph.hpp"

namespace testutil {

inline std::string write_tmp(const std::string& name, const std::string& body) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << body;
    return path.string();
}

inline corecrest::CitationGraph graph_from(
    std::initializer_list<std::pair<const char*, const char*>> edges) {
    corecrest::GraphBuilder b;
    for (const auto& [u, v] : edges) b.add_edge_keys(u, v);
    return std::move(b).build();
}

// Numeric node ids, explicit n so isolated nodes can exist.
inline corecrest::CitationGraph graph_n(
    std::size_t n, std::initializer_list<std::pair<unsigned, unsigned>> edges) {
    auto b = corecrest::GraphBuilder::with_implicit_keys(n);
    for (const auto& [u, v] : edges) {
        b.add_edge(static_cast<corecrest::NodeId>(u), static_cast<corecrest::NodeId>(v));
    }
    return std::move(b).build();
}

inline corecrest::CitationGraph complete_graph(unsigned n) {
    auto b = corecrest::GraphBuilder::with_implicit_keys(n);
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = i + 1; j < n; ++j) b.add_edge(i, j);
    }
    return std::move(b).build();
}

// K5 on ids 0..4, K4 on ids 5..8, one bridge 0-5, plus isolated node 9.
// m = 17 undirected.
inline corecrest::CitationGraph k5_bridge_k4() {
    auto b = corecrest::GraphBuilder::with_implicit_keys(10);
    for (unsigned i = 0; i < 5; ++i) {
        for (unsigned j = i + 1; j < 5; ++j) b.add_edge(i, j);
    }
    for (unsigned i = 5; i < 9; ++i) {
        for (unsigned j = i + 1; j < 9; ++j) b.add_edge(i, j);
    }
    b.add_edge(0, 5);
    return std::move(b).build();
}

// K5 on ids 0..4, K4 on ids 5..8 (5 plays b1), plus 5-0, 5-1, 5-2.
// m = 19 undirected.
inline corecrest::CitationGraph overlap_gadget() {
    auto b = corecrest::GraphBuilder::with_implicit_keys(9);
    for (unsigned i = 0; i < 5; ++i) {
        for (unsigned j = i + 1; j < 5; ++j) b.add_edge(i, j);
    }
    for (unsigned i = 5; i < 9; ++i) {
        for (unsigned j = i + 1; j < 9; ++j) b.add_edge(i, j);
    }
    b.add_edge(5, 0);
    b.add_edge(5, 1);
    b.add_edge(5, 2);
    return std::move(b).build();
}

// Exact rationals for the fixtures above, frozen from a by-hand evaluation
// of Q = l/m - (d/2m)^2.
inline constexpr double kModularityBridgeK5 = 239.0 / 1156.0;    // ~0.206747
inline constexpr double kModularityGadgetC0 = 231.0 / 1444.0;    // ~0.159972
inline constexpr double kModularityGadgetC1 = 231.0 / 1444.0;
inline constexpr double kModularityGadgetC0PlusB1 = 147.0 / 1444.0;  // ~0.101801

inline std::string data_dir() {
    const char* env = std::getenv("CORECREST_DATA");
    return env ? env : "data";
}

inline std::string corecrest_bin() {
    const char* env = std::getenv("CORECREST_BIN");
    return env ? env : "";
}

}  // namespace testutil
