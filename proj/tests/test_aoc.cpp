#include <doctest.h>

#include <set>

#include "corecrest/aoc.hpp"
#include "corecrest/ikc.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace corecrest;
using testutil::graph_n;
using testutil::overlap_gadget;
using testutil::write_tmp;

namespace {

MembershipCriterion crit_m(std::uint32_t k) {
    return {MembershipCriterion::Kind::aoc_m, k};
}
MembershipCriterion crit_k(std::uint32_t k) {
    return {MembershipCriterion::Kind::aoc_k, k};
}

}  // namespace

TEST_CASE("candidate ordering is total degree descending, ties by id") {
    // Degrees: 5 has 6, 0..2 have 5, 3..4 have 4, 6..8 have 3.
    auto g = overlap_gadget();
    auto clustering = ikc(g, 3).clustering;
    auto cands = candidates_from_members(g, clustering);
    CHECK(cands.nodes ==
          std::vector<NodeId>{5, 0, 1, 2, 3, 4, 6, 7, 8});
}

TEST_CASE("top percent singleton candidates include cutoff ties") {
    // Star: hub 0 with 4 leaves; only leaf 4 is clustered (fake clustering).
    auto g = graph_n(5, {{1, 0}, {2, 0}, {3, 0}, {4, 0}});
    Clustering clustering;
    clustering.graph_nodes = 5;
    clustering.graph_fingerprint = g.fingerprint();
    Cluster c;
    c.id = 0;
    c.members = {0};
    clustering.clusters.push_back(c);

    // 50% of 5 nodes -> ceil(2.5) = 3 kept: degrees {4,1,1,1,1}, cutoff is
    // the 3rd largest = 1, ties included -> top set is everyone; singletons
    // among them are 1..4.
    auto cands = candidates_top_singletons(g, clustering, 50.0);
    CHECK(cands.nodes == std::vector<NodeId>{1, 2, 3, 4});

    // 20% -> ceil(1) = 1 kept, cutoff 4 -> only the hub, which is clustered.
    auto none = candidates_top_singletons(g, clustering, 20.0);
    CHECK(none.nodes.empty());

    CHECK_THROWS_AS(candidates_top_singletons(g, clustering, -1.0), ConfigError);
    CHECK_THROWS_AS(candidates_top_singletons(g, clustering, 101.0), ConfigError);
}

TEST_CASE("candidate files skip unknown keys with a warning") {
    auto g = overlap_gadget();
    auto path = write_tmp("cands.txt", "3\n5\nnope\n5\n# comment\n\n12\n");
    auto cands = candidates_from_file(g, path);
    CHECK(cands.unknown_key_warnings == 2);
    // 5 (degree 6) before 3 (degree 4); duplicate 5 collapsed.
    CHECK(cands.nodes == std::vector<NodeId>{5, 3});
    CHECK_THROWS_AS(candidates_from_file(g, "/nonexistent/cands"), ConfigError);
}

TEST_CASE("aoc_k admits the shared node on the gadget, aoc_m does not") {
    auto g = overlap_gadget();
    auto clustering = ikc(g, 3).clustering;
    REQUIRE(clustering.clusters.size() == 2);
    auto cands = candidates_from_members(g, clustering);

    AocOptions opts;
    opts.record_decisions = true;

    auto under_k = aoc(g, clustering, cands, crit_k(3), opts);
    REQUIRE(under_k.clustering.clusters.size() == 2);
    CHECK(under_k.clustering.clusters[0].members ==
          std::vector<NodeId>{0, 1, 2, 3, 4, 5});
    CHECK(under_k.clustering.clusters[1].members == std::vector<NodeId>{5, 6, 7, 8});
    CHECK(under_k.clustering.clusters[0].meta.modularity ==
          doctest::Approx(testutil::kModularityGadgetC0PlusB1).epsilon(1e-12));
    CHECK(under_k.clustering.clusters[0].meta.provenance == Provenance::aoc_k);
    // extraction_k carries over from the source cluster.
    CHECK(under_k.clustering.clusters[0].meta.extraction_k == 4);

    // The admission of node 5 into cluster 0 shows up in the decision log.
    bool found = false;
    for (const auto& d : under_k.decisions) {
        if (d.cluster_id == 0 && d.node == 5) {
            found = true;
            CHECK(d.neighbors_in_reference == 3);
            CHECK(d.threshold == 3);
            CHECK(d.degree_pass);
            CHECK(d.modularity_pass);
            CHECK(d.admitted);
            CHECK(d.modularity_if_added ==
                  doctest::Approx(testutil::kModularityGadgetC0PlusB1).epsilon(1e-12));
        }
    }
    CHECK(found);

    auto under_m = aoc(g, clustering, cands, crit_m(3), opts);
    CHECK(under_m.clustering.clusters[0].members == std::vector<NodeId>{0, 1, 2, 3, 4});
    CHECK(under_m.clustering.clusters[1].members == std::vector<NodeId>{5, 6, 7, 8});
    CHECK(under_m.clustering.clusters[0].meta.provenance == Provenance::aoc_m);
    for (const auto& d : under_m.decisions) {
        if (d.cluster_id == 0 && d.node == 5) {
            CHECK(d.threshold == 4);
            CHECK(!d.degree_pass);
            CHECK(!d.admitted);
        }
    }
}

TEST_CASE("aoc argument validation") {
    auto g = overlap_gadget();
    auto clustering = ikc(g, 3).clustering;
    auto cands = candidates_from_members(g, clustering);
    CHECK_THROWS_AS(aoc(g, clustering, cands, crit_k(4)), ConfigError);
    CHECK_THROWS_AS(aoc(g, clustering, cands, crit_k(0)), ConfigError);

    // Overlapping input is rejected.
    Clustering overlapping = clustering;
    overlapping.ikc_k = 3;
    overlapping.clusters[1].members.push_back(0);
    CHECK_THROWS_AS(aoc(g, overlapping, cands, crit_k(3)), InputError);
}

TEST_CASE("aoc with no candidates is the identity on members") {
    auto g = overlap_gadget();
    auto clustering = ikc(g, 3).clustering;
    CandidateSet empty;
    auto out = aoc(g, clustering, empty, crit_k(3));
    REQUIRE(out.clustering.clusters.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(out.clustering.clusters[i].members == clustering.clusters[i].members);
    }
}

TEST_CASE("frozen reference counts against original members only") {
    // Triangle cluster {0,1,2}; candidate 3 touches all of it, 4 leans on 3,
    // 5 leans on 3 and 4. Nodes 6..15 are a disjoint path that pads m so the
    // modularity gate stays positive throughout.
    auto g = graph_n(16, {{0, 1}, {1, 2}, {2, 0},
                          {3, 0}, {3, 1}, {3, 2},
                          {4, 3}, {4, 0}, {4, 1},
                          {5, 4}, {5, 3}, {5, 0},
                          {6, 7}, {7, 8}, {8, 9}, {9, 10}, {10, 11},
                          {11, 12}, {12, 13}, {13, 14}, {14, 15}});
    Clustering clustering;
    clustering.graph_nodes = 16;
    clustering.graph_fingerprint = g.fingerprint();
    Cluster c;
    c.id = 0;
    c.members = {0, 1, 2};
    c.meta.extraction_k = 2;
    c.meta.mcd = 2;
    c.meta.modularity = cluster_modularity(g, c.members);
    clustering.clusters.push_back(c);

    CandidateSet cands;
    cands.nodes = {3, 4, 5};

    // Rolling reference: 3 joins with 3 neighbors in {0,1,2}, then 4 sees
    // {3,0,1} in the expansion, then 5 sees {4,3,0}.
    auto rolling = aoc(g, clustering, cands, crit_k(3));
    CHECK(rolling.clustering.clusters[0].members == std::vector<NodeId>{0, 1, 2, 3, 4, 5});

    // Frozen reference: 4 has only {0,1} in the original members, 5 only
    // {0}; both fail the degree test while 3 still passes.
    AocOptions frozen;
    frozen.frozen_reference = true;
    auto fixed = aoc(g, clustering, cands, crit_k(3), frozen);
    CHECK(fixed.clustering.clusters[0].members == std::vector<NodeId>{0, 1, 2, 3});
}

TEST_CASE("aoc is deterministic across thread counts") {
    Rng rng = Rng::derive(977, 0);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 30 + rng.below(120);
        auto g = oracle::random_graph(rng, n, 6 * n);
        auto clustering = ikc(g, 2).clustering;
        if (clustering.clusters.empty()) continue;
        auto cands = candidates_from_members(g, clustering);
        AocOptions opt1, opt4;
        opt1.threads = 1;
        opt1.record_decisions = true;
        opt4.threads = 4;
        opt4.record_decisions = true;
        auto a = aoc(g, clustering, cands, crit_k(2), opt1);
        auto b = aoc(g, clustering, cands, crit_k(2), opt4);
        REQUIRE(a.clustering.clusters.size() == b.clustering.clusters.size());
        for (std::size_t i = 0; i < a.clustering.clusters.size(); ++i) {
            REQUIRE(a.clustering.clusters[i].members == b.clustering.clusters[i].members);
            REQUIRE(a.clustering.clusters[i].meta.modularity ==
                    b.clustering.clusters[i].meta.modularity);
        }
        REQUIRE(a.decisions.size() == b.decisions.size());
        for (std::size_t i = 0; i < a.decisions.size(); ++i) {
            REQUIRE(a.decisions[i].cluster_id == b.decisions[i].cluster_id);
            REQUIRE(a.decisions[i].node == b.decisions[i].node);
            REQUIRE(a.decisions[i].admitted == b.decisions[i].admitted);
        }
    }
}

TEST_CASE("aoc guarantees on random graphs") {
    Rng rng = Rng::derive(977, 1);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 30 + rng.below(100);
        auto g = oracle::random_graph(rng, n, 5 * n);
        std::uint32_t k = 2;
        auto clustering = ikc(g, k).clustering;
        if (clustering.clusters.empty()) continue;
        auto cands = candidates_from_members(g, clustering);
        for (auto kind : {MembershipCriterion::Kind::aoc_m, MembershipCriterion::Kind::aoc_k}) {
            auto out = aoc(g, clustering, cands, {kind, k});
            REQUIRE(out.clustering.clusters.size() == clustering.clusters.size());
            for (std::size_t i = 0; i < out.clustering.clusters.size(); ++i) {
                const auto& before = clustering.clusters[i];
                const auto& after = out.clustering.clusters[i];
                REQUIRE(after.id == before.id);
                // Superset of the original members.
                std::set<NodeId> members(after.members.begin(), after.members.end());
                for (NodeId v : before.members) REQUIRE(members.count(v) == 1);
                // km-validity is preserved, measured on the actual members.
                REQUIRE(mcd_of(g, after.members) >= k);
                REQUIRE(after.meta.mcd >= k);
                REQUIRE(after.meta.modularity > 0.0);
                if (kind == MembershipCriterion::Kind::aoc_m) {
                    // The reported MCD carries over, and the measured floor
                    // never drops below it.
                    REQUIRE(after.meta.mcd == before.meta.mcd);
                    REQUIRE(mcd_of(g, after.members) >= before.meta.mcd);
                } else {
                    REQUIRE(after.meta.mcd == mcd_of(g, after.members));
                }
            }
        }
    }
}

TEST_CASE("multi assignment report") {
    auto g = overlap_gadget();
    auto clustering = ikc(g, 3).clustering;
    auto disjoint = multi_assignment_report(clustering, g);
    REQUIRE(disjoint.histogram.size() == 1);
    CHECK(disjoint.histogram.at(1) == 9);

    auto cands = candidates_from_members(g, clustering);
    auto out = aoc(g, clustering, cands, crit_k(3));
    auto overlapped = multi_assignment_report(out.clustering, g);
    CHECK(overlapped.histogram.at(1) == 8);
    CHECK(overlapped.histogram.at(2) == 1);
    // All gadget degrees are under 100, so group 0 carries everything.
    CHECK(overlapped.by_degree_group[0].at(2) == 1);
    for (int gi = 1; gi < 5; ++gi) CHECK(overlapped.by_degree_group[gi].empty());
}

TEST_CASE("cluster growth report") {
    auto g = overlap_gadget();
    auto clustering = ikc(g, 3).clustering;
    auto same = cluster_growth_report(clustering, clustering);
    CHECK(same.unchanged == 2);
    CHECK(same.increased == 0);

    auto cands = candidates_from_members(g, clustering);
    auto out = aoc(g, clustering, cands, crit_k(3));
    auto growth = cluster_growth_report(clustering, out.clustering);
    CHECK(growth.unchanged == 1);
    CHECK(growth.increased == 1);
    REQUIRE(growth.rows.size() == 2);
    CHECK(growth.rows[0].cluster_id == 0);
    CHECK(growth.rows[0].size_before == 5);
    CHECK(growth.rows[0].size_after == 6);
    CHECK(growth.rows[0].percent_increase == doctest::Approx(20.0));
    CHECK(growth.rows[1].percent_increase == doctest::Approx(0.0));

    Clustering mismatched = clustering;
    mismatched.clusters.pop_back();
    CHECK_THROWS_AS(cluster_growth_report(mismatched, out.clustering), InputError);
}
