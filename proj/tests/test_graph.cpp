#include <doctest.h>

#include <fstream>
#include <numeric>

#include "corecrest/graph.hpp"
#include "test_util.hpp"

using namespace corecrest;
using testutil::graph_from;
using testutil::graph_n;
using testutil::write_tmp;

TEST_CASE("load_edges dedups and drops self-loops") {
    auto path = write_tmp("edges_dedup.tsv", "a\tb\nb\tc\na\tb\n");
    auto g = load_edges(path);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);

    auto loop = write_tmp("edges_loop.tsv", "a\ta\n");
    auto g2 = load_edges(loop);
    CHECK(g2.node_count() == 1);
    CHECK(g2.edge_count() == 0);
}

TEST_CASE("load_edges reports parse errors with line numbers") {
    auto path = write_tmp("edges_bad.tsv", "a\tb\nbroken row with no tab\nc\td\n");
    try {
        load_edges(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    auto empty_key = write_tmp("edges_emptykey.tsv", "a\t\n");
    CHECK_THROWS_AS(load_edges(empty_key), ParseError);
    CHECK_THROWS_AS(load_edges("/nonexistent/path/edges.tsv"), ConfigError);
}

TEST_CASE("load_edges skips comments and blanks, honors comma delimiter") {
    auto path = write_tmp("edges_comments.tsv", "# header\n\na\tb\n  \nb\tc\n");
    auto g = load_edges(path);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);

    auto csv = write_tmp("edges_comma.csv", "a,b\nb,c\n");
    EdgeListOptions opt;
    opt.delimiter = ',';
    auto g2 = load_edges(csv, opt);
    CHECK(g2.edge_count() == 2);

    auto empty = write_tmp("edges_empty.tsv", "");
    auto g3 = load_edges(empty);
    CHECK(g3.node_count() == 0);
    CHECK(g3.edge_count() == 0);
}

TEST_CASE("ids follow first-seen order and round-trip through keys") {
    auto g = graph_from({{"x", "y"}, {"y", "z"}, {"z", "x"}});
    CHECK(g.key(0) == "x");
    CHECK(g.key(1) == "y");
    CHECK(g.key(2) == "z");
    CHECK(g.find("y") == NodeId{1});
    CHECK(!g.find("missing").has_value());
}

TEST_CASE("implicit keys are decimal ids") {
    auto g = graph_n(5, {{0, 1}, {1, 2}});
    CHECK(g.node_count() == 5);
    CHECK(g.key(3) == "3");
    CHECK(g.find("3") == NodeId{3});
    CHECK(!g.find("03").has_value());
    CHECK(!g.find("7").has_value());
    CHECK(!g.find("").has_value());
}

TEST_CASE("degree views agree on directed and undirected counts") {
    // Reciprocal pair a<->b plus b->c.
    auto g = graph_from({{"a", "b"}, {"b", "a"}, {"b", "c"}});
    CHECK(g.edge_count() == 3);
    CHECK(g.undirected_edge_count() == 2);
    auto a = *g.find("a");
    auto b = *g.find("b");
    CHECK(g.total_degree(a) == 2);
    CHECK(g.undirected_degree(a) == 1);
    CHECK(g.total_degree(b) == 3);
    CHECK(g.undirected_degree(b) == 2);

    std::uint64_t out_sum = 0, in_sum = 0, total_sum = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        out_sum += g.out_degree(v);
        in_sum += g.in_degree(v);
        total_sum += g.total_degree(v);
    }
    CHECK(out_sum == g.edge_count());
    CHECK(in_sum == g.edge_count());
    CHECK(total_sum == 2 * g.edge_count());
}

TEST_CASE("neighbor lists are sorted and loop-free") {
    auto g = graph_n(6, {{3, 1}, {3, 0}, {3, 5}, {2, 3}, {4, 3}, {3, 3}});
    auto out = g.out_neighbors(3);
    REQUIRE(out.size() == 3);
    CHECK(out[0] == 0);
    CHECK(out[1] == 1);
    CHECK(out[2] == 5);
    auto in = g.in_neighbors(3);
    REQUIRE(in.size() == 2);
    CHECK(in[0] == 2);
    CHECK(in[1] == 4);
    auto und = g.neighbors(3);
    REQUIRE(und.size() == 5);
    CHECK(std::is_sorted(und.begin(), und.end()));
}

TEST_CASE("fingerprint is order-independent over the edge set") {
    auto g1 = graph_n(4, {{0, 1}, {1, 2}, {2, 3}});
    auto g2 = graph_n(4, {{2, 3}, {0, 1}, {1, 2}, {0, 1}});
    CHECK(g1.fingerprint() == g2.fingerprint());
    auto g3 = graph_n(4, {{0, 1}, {1, 2}, {3, 2}});
    CHECK(g1.fingerprint() != g3.fingerprint());
}

TEST_CASE("load_metadata parses years and flags unknown keys") {
    auto g = graph_from({{"p1", "p2"}});
    auto path = write_tmp("meta_ok.tsv", "p1\t1999\t10.1/x\np2\t2005\nghost\t1990\n");
    auto meta = load_metadata(path, g);
    auto p1 = *g.find("p1");
    auto p2 = *g.find("p2");
    CHECK(meta.has_year(p1));
    CHECK(meta.year[p1] == 1999);
    CHECK(meta.doi[p1] == "10.1/x");
    CHECK(meta.year[p2] == 2005);
    CHECK(meta.doi[p2].empty());
    CHECK(meta.unknown_key_warnings == 1);

    auto bad = write_tmp("meta_bad.tsv", "p1\tnineteen\n");
    CHECK_THROWS_AS(load_metadata(bad, g), ParseError);
}

TEST_CASE("curate removes high-referencing nodes at the threshold") {
    GraphBuilder b;
    auto hub = b.intern("hub");
    for (int i = 0; i < 250; ++i) {
        b.add_edge(hub, b.intern("leaf" + std::to_string(i)));
    }
    b.add_edge_keys("other", "leaf0");
    auto g = std::move(b).build();
    NodeMetadata meta;
    meta.year.assign(g.node_count(), NodeMetadata::kNoYear);
    meta.doi.assign(g.node_count(), "");

    auto curated = curate(g, meta, {}, 250);
    CHECK(curated.report.nodes_removed == 1);
    CHECK(curated.report.high_referencing_matched == 1);
    CHECK(curated.report.edges_removed == 250);
    CHECK(curated.graph.node_count() == g.node_count() - 1);
    CHECK(curated.graph.edge_count() == 1);
    CHECK(!curated.graph.find("hub").has_value());

    // out-degree 249 stays at the same threshold
    auto kept = curate(g, meta, {}, 251);
    CHECK(kept.report.nodes_removed == 0);
}

TEST_CASE("curate with no filters is the identity") {
    auto g = graph_from({{"a", "b"}, {"b", "c"}});
    NodeMetadata meta;
    meta.year.assign(g.node_count(), NodeMetadata::kNoYear);
    meta.doi.assign(g.node_count(), "");
    auto out = curate(g, meta, {}, kNoReferenceLimit);
    CHECK(out.graph.node_count() == g.node_count());
    CHECK(out.graph.edge_count() == g.edge_count());
    CHECK(out.graph.fingerprint() == g.fingerprint());
    CHECK(out.report.nodes_removed == 0);
    CHECK(out.report.edges_removed == 0);
}

TEST_CASE("curate of a star center leaves isolated leaves") {
    GraphBuilder b;
    auto c = b.intern("center");
    for (int i = 0; i < 5; ++i) b.add_edge(c, b.intern("l" + std::to_string(i)));
    auto g = std::move(b).build();
    NodeMetadata meta;
    meta.year.assign(g.node_count(), NodeMetadata::kNoYear);
    meta.doi.assign(g.node_count(), "");
    auto out = curate(g, meta, {}, 5);
    CHECK(out.graph.node_count() == 5);
    CHECK(out.graph.edge_count() == 0);
}

TEST_CASE("curate matches retracted DOIs case-insensitively") {
    auto g = graph_from({{"p1", "p2"}, {"p2", "p3"}});
    auto meta_path = write_tmp("meta_retract.tsv", "p1\t2001\t10.1234/AbC\n");
    auto meta = load_metadata(meta_path, g);
    auto out = curate(g, meta, {"10.1234/abc"}, kNoReferenceLimit);
    CHECK(out.report.retracted_matched == 1);
    CHECK(out.report.nodes_removed == 1);
    CHECK(!out.graph.find("p1").has_value());
    CHECK(out.graph.find("p2").has_value());
    CHECK(out.graph.edge_count() == 1);
}

TEST_CASE("curate is idempotent for fixed arguments") {
    GraphBuilder b;
    auto hub = b.intern("hub");
    for (int i = 0; i < 6; ++i) b.add_edge(hub, b.intern("x" + std::to_string(i)));
    b.add_edge_keys("x0", "x1");
    b.add_edge_keys("x1", "x2");
    auto g = std::move(b).build();
    NodeMetadata meta;
    meta.year.assign(g.node_count(), NodeMetadata::kNoYear);
    meta.doi.assign(g.node_count(), "");
    auto once = curate(g, meta, {}, 5);
    NodeMetadata meta2;
    meta2.year.assign(once.graph.node_count(), NodeMetadata::kNoYear);
    meta2.doi.assign(once.graph.node_count(), "");
    auto twice = curate(once.graph, meta2, {}, 5);
    CHECK(twice.report.nodes_removed == 0);
    CHECK(twice.graph.fingerprint() == once.graph.fingerprint());
}

TEST_CASE("degree group boundaries") {
    CHECK(DegreeGroupReport::group_of(0) == 0);
    CHECK(DegreeGroupReport::group_of(99) == 0);
    CHECK(DegreeGroupReport::group_of(100) == 1);
    CHECK(DegreeGroupReport::group_of(999) == 1);
    CHECK(DegreeGroupReport::group_of(1000) == 2);
    CHECK(DegreeGroupReport::group_of(9999) == 2);
    CHECK(DegreeGroupReport::group_of(10000) == 3);
    CHECK(DegreeGroupReport::group_of(99999) == 3);
    CHECK(DegreeGroupReport::group_of(100000) == 4);
    CHECK(DegreeGroupReport::group_of(5) == 0);
    CHECK(DegreeGroupReport::group_of(150) == 1);
    CHECK(DegreeGroupReport::group_of(2000) == 2);
}

TEST_CASE("degree_groups counts nodes per group") {
    auto empty = graph_n(0, {});
    auto r0 = degree_groups(empty);
    for (auto c : r0.counts) CHECK(c == 0);

    GraphBuilder b;
    auto hub = b.intern("hub");
    for (int i = 0; i < 150; ++i) b.add_edge(hub, b.intern("t" + std::to_string(i)));
    auto g = std::move(b).build();
    auto r = degree_groups(g);
    CHECK(r.counts[0] == 150);
    CHECK(r.counts[1] == 1);
    CHECK(std::accumulate(r.counts.begin(), r.counts.end(), std::uint64_t{0}) == g.node_count());
}

TEST_CASE("largest_connected_component uses the undirected view") {
    // Two disjoint triangles and an isolated node; tie goes to min id.
    auto g = graph_n(7, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    auto lcc = largest_connected_component(g);
    CHECK(lcc == std::vector<NodeId>{0, 1, 2});

    auto path4 = graph_n(4, {{0, 1}, {2, 1}, {2, 3}});
    CHECK(largest_connected_component(path4).size() == 4);

    // K5 beats K4.
    GraphBuilder b;
    for (unsigned i = 0; i < 5; ++i) {
        for (unsigned j = i + 1; j < 5; ++j) {
            b.add_edge_keys("a" + std::to_string(i), "a" + std::to_string(j));
        }
    }
    for (unsigned i = 0; i < 4; ++i) {
        for (unsigned j = i + 1; j < 4; ++j) {
            b.add_edge_keys("b" + std::to_string(i), "b" + std::to_string(j));
        }
    }
    auto g2 = std::move(b).build();
    auto lcc2 = largest_connected_component(g2);
    REQUIRE(lcc2.size() == 5);
    for (NodeId v : lcc2) CHECK(g2.key(v)[0] == 'a');

    CHECK(largest_connected_component(graph_n(0, {})).empty());
}
