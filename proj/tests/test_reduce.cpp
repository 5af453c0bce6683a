#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "crossmin/errors.hpp"
#include "crossmin/evaluate.hpp"
#include "crossmin/geometry.hpp"
#include "crossmin/normalize.hpp"
#include "crossmin/reduce.hpp"
#include "crossmin/solve.hpp"
#include "support/corpus.hpp"

using namespace crossmin;
namespace ts = crossmin::testsupport;

namespace {

Cnf make_cnf(int num_vars, std::vector<std::vector<int>> clauses) {
  Cnf cnf;
  cnf.num_vars = num_vars;
  cnf.clauses = std::move(clauses);
  return cnf;
}

Assignment all_true(int n) {
  Assignment tau;
  for (int v = 1; v <= n; ++v) tau.value[v] = true;
  return tau;
}

// Independent count of the drawing's crossing weight in the paths
// construction: each gadget entry and exit slant of a member variable
// crosses one row pipe of every lower-row variable not in the clause, and
// both pipes carry all three strands, so each crossing point weighs 3 * 3.
long long expected_paths_cr2(const Cnf& cnf) {
  long long total = 0;
  for (const auto& clause : cnf.clauses) {
    std::set<int> members;
    for (int l : clause) members.insert(std::abs(l));
    for (int x : members)
      for (int other = 1; other <= cnf.num_vars; ++other)
        if (!members.count(other) && other < x) total += 2 * 9;
  }
  return total;
}

}  // namespace

TEST_CASE("dimacs parsing") {
  Cnf cnf = parse_dimacs("c comment\np cnf 3 2\n1 -2 3 0\n-1 2 3 0\n");
  CHECK(cnf.num_vars == 3);
  REQUIRE(cnf.clauses.size() == 2);
  CHECK(cnf.clauses[0] == std::vector<int>{1, -2, 3});
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 -3 0\n"), DataError);  // out of range
  CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), DataError);              // no problem line
  CHECK_THROWS_AS(parse_dimacs("p cnf 3 2\n1 2 3 0\n"), DataError); // count mismatch
}

TEST_CASE("clauses must have exactly three distinct variables") {
  CHECK_THROWS_AS(build_paths_instance(make_cnf(3, {{1, 2}})), DataError);
  CHECK_THROWS_AS(build_paths_instance(make_cnf(3, {{1, -1, 2}})), DataError);
  CHECK_THROWS_AS(build_paths_instance(make_cnf(4, {{1, 2, 3, 4}})), DataError);
}

TEST_CASE("single clause construction counts") {
  Cnf cnf = make_cnf(3, {{1, 2, 3}});
  ReductionOutput out = build_paths_instance(cnf);
  CHECK(validate(out.instance).admissible());
  CHECK(guest_shape(out.instance.guest) == GuestShape::DisjointPaths);
  CHECK(out.K == out.cr2 + 13);

  // the clause pipe carries 7 * 3 + 1 = 22 edges
  auto w = pipe_weights(out.instance);
  const std::string clause_pipe = out.clauses[0].gadget_pipes[1];
  CHECK(w[clause_pipe] == 22);
  // each variable contributes 3 + 3 + 1 edges to it
  for (const auto& me : out.clauses[0].members) {
    CHECK(me.first_sub[1].size() + me.third_sub[1].size() == 6);
    long long on_pipe = 0;
    for (const auto& vp = out.variables[me.var - 1]; const auto& e : vp.path_edges)
      if (out.instance.map.edge_map.at(e) == clause_pipe) on_pipe++;
    CHECK(on_pipe == 7);
  }
  // side gadget pipes carry 5 per member variable
  CHECK(w[out.clauses[0].gadget_pipes[0]] == 15);
  CHECK(w[out.clauses[0].gadget_pipes[2]] == 15);
}

TEST_CASE("provenance recount: strand lengths and substitutions") {
  ts::Rng rng(11);
  for (int t = 0; t < 6; ++t) {
    auto [cnf, tau] = random_sat_cnf(rng, 3 + static_cast<int>(rng.below(3)),
                                     1 + static_cast<int>(rng.below(4)));
    ReductionOutput out = build_paths_instance(cnf);
    int m = out.num_clauses;
    for (int j = 1; j <= out.num_vars; ++j) {
      const auto& vp = out.variables[j - 1];
      long long occ = 0;
      for (const auto& clause : cnf.clauses)
        for (int l : clause)
          if (std::abs(l) == j) occ++;
      CHECK(static_cast<long long>(vp.path_vertices.size()) == 15LL * m + 3 + 8 * occ);
      CHECK(vp.strand2_vertices == static_cast<std::size_t>(5 * m + 1));
      CHECK(vp.strand1_vertices + vp.strand3_vertices ==
            static_cast<std::size_t>(2 * (5 * m + 2) + 8 * occ));
    }
  }
}

TEST_CASE("gadgets turn back: spurs present, one at the far gadget cluster") {
  Cnf cnf = make_cnf(3, {{1, 2, 3}});
  ReductionOutput out = build_paths_instance(cnf);
  auto spurs = detect_spurs(out.instance);
  CHECK(!spurs.empty());
  // the far turn-back of the first strand's detour sits at u_{5i+3}
  const std::string far = out.clauses[0].gadget_clusters[3];
  bool at_far = false;
  for (const auto& s : spurs)
    if (out.instance.map.vertex_map.at(s) == far) at_far = true;
  CHECK(at_far);
}

TEST_CASE("variable host paths are x-monotone") {
  Cnf cnf = make_cnf(4, {{1, 2, 3}, {-2, 3, 4}});
  ReductionOutput out = build_paths_instance(cnf);
  for (const auto& vp : out.variables) {
    Rat last(-1000);
    for (const auto& cid : vp.host_clusters) {
      const Cluster* c = out.instance.host.find_cluster(cid);
      REQUIRE(c != nullptr);
      CHECK(c->pos.x > last);
      last = c->pos.x;
    }
  }
}

TEST_CASE("rotations at the gadget ends are mutually reversed") {
  ts::Rng rng(17);
  for (int t = 0; t < 4; ++t) {
    auto [cnf, tau] = random_sat_cnf(rng, 4, 3);
    ReductionOutput out = build_paths_instance(cnf);
    RotationSystem rot = rotation_at(out.instance.host);
    for (const auto& cp : out.clauses) {
      // member pipes entering u_{5i} and leaving u_{5i+3}, keyed by variable
      std::map<std::string, int> entry_var, exit_var;
      for (const auto& me : cp.members) {
        const auto& vp = out.variables[me.var - 1];
        for (const auto& e : vp.path_edges) {
          const std::string& pid = out.instance.map.edge_map.at(e);
          if (pid.substr(0, 2) == "ep" && rot.at.count(cp.gadget_clusters[0]))
            entry_var[pid] = me.var;
          if (pid.substr(0, 2) == "xp") exit_var[pid] = me.var;
        }
      }
      auto vars_in_rotation = [&](const std::string& cluster,
                                  const std::map<std::string, int>& key) {
        std::vector<int> vars;
        for (const auto& pid : rot.at.at(cluster)) {
          auto it = key.find(pid);
          if (it != key.end()) vars.push_back(it->second);
        }
        return vars;
      };
      std::vector<int> in = vars_in_rotation(cp.gadget_clusters[0], entry_var);
      std::vector<int> outv = vars_in_rotation(cp.gadget_clusters[3], exit_var);
      REQUIRE(in.size() == 3);
      REQUIRE(outv.size() == 3);
      std::reverse(outv.begin(), outv.end());
      // equal as cyclic sequences
      bool cyclic_equal = false;
      for (int s = 0; s < 3; ++s)
        cyclic_equal |= (in[0] == outv[s % 3] && in[1] == outv[(s + 1) % 3] &&
                         in[2] == outv[(s + 2) % 3]);
      CHECK(cyclic_equal);
    }
  }
}

TEST_CASE("paths-variant drawing crossings match the independent count") {
  ts::Rng rng(23);
  for (int t = 0; t < 6; ++t) {
    auto [cnf, tau] = random_sat_cnf(rng, 3 + static_cast<int>(rng.below(4)),
                                     1 + static_cast<int>(rng.below(5)));
    ReductionOutput out = build_paths_instance(cnf);
    CHECK(out.cr2 == expected_paths_cr2(cnf));
    CHECK(out.K - out.cr2 == 13LL * out.num_clauses);
  }
}

TEST_CASE("cycle construction: one cycle, unit matching pipes, singleton endpoints") {
  Cnf cnf = make_cnf(3, {{1, 2, 3}});
  ReductionOutput out = build_cycle_instance(cnf);
  CHECK(validate(out.instance).admissible());
  CHECK(guest_shape(out.instance.guest) == GuestShape::Cycle);
  auto w = pipe_weights(out.instance);
  for (const auto& mp : out.matching_pipes) CHECK(w[mp] == 1);
  CHECK(out.matching_pipes.size() == 4);  // 3 variables + 1 clause
  CHECK(out.K == out.cr2 + 13);

  // cycle cr2 exceeds the paths cr2 by exactly the matching-arc crossings
  ReductionOutput paths = build_paths_instance(cnf);
  auto ledger = crossing_ledger(out.instance);
  long long matching_crossings = 0;
  std::set<std::string> mp(out.matching_pipes.begin(), out.matching_pipes.end());
  for (const auto& [pair, mult] : ledger.crossing_pairs) {
    bool a = mp.count(pair.first), b = mp.count(pair.second);
    if (a || b)
      matching_crossings += mult * ledger.w.at(pair.first) * ledger.w.at(pair.second);
  }
  CHECK(out.cr2 - paths.cr2 == matching_crossings);

  // the solver refuses: spurs are the whole point of this regime
  CHECK_THROWS_AS(solve(out.instance), SpurPresentError);
}

TEST_CASE("witness achieves K on the single all-positive clause") {
  Cnf cnf = make_cnf(3, {{1, 2, 3}});
  for (bool cycle : {false, true}) {
    ReductionOutput out = cycle ? build_cycle_instance(cnf) : build_paths_instance(cnf);
    PipeOrderSet orders = build_witness(out, all_true(3));
    EvalResult res = evaluate(out.instance, orders);
    CHECK(res.total == out.K);
    CHECK(res.total == out.cr2 + 13);
  }
}

TEST_CASE("witness on a two-clause formula with a mixed assignment") {
  Cnf cnf = make_cnf(3, {{1, 2, 3}, {-1, 2, 3}});
  Assignment tau;
  tau.value = {{1, false}, {2, true}, {3, false}};
  REQUIRE(satisfies(cnf, tau));
  ReductionOutput out = build_paths_instance(cnf);
  PipeOrderSet orders = build_witness(out, tau);
  CHECK(evaluate(out.instance, orders).total == out.K);
  CHECK(out.K == out.cr2 + 26);
}

TEST_CASE("witness refuses a falsifying assignment") {
  Cnf cnf = make_cnf(3, {{1, 2, 3}});
  Assignment tau;
  tau.value = {{1, false}, {2, false}, {3, false}};
  ReductionOutput out = build_paths_instance(cnf);
  CHECK_THROWS_AS(build_witness(out, tau), DataError);
}

TEST_CASE("per-gadget breakdown is 13 = 3 + 5 + 5 with the 3 on a true literal") {
  ts::Rng rng(37);
  for (int t = 0; t < 5; ++t) {
    auto [cnf, tau] = random_sat_cnf(rng, 4, 2 + static_cast<int>(rng.below(2)));
    ReductionOutput out = build_paths_instance(cnf);
    PipeOrderSet orders = build_witness(out, tau);
    CombInstance m = attach(out.instance);
    IntOrders io = import_orders(m, orders);
    for (const auto& cp : out.clauses) {
      std::vector<int> gadget;
      for (const auto& c : cp.gadget_clusters) gadget.push_back(m.find_cluster(c));
      auto pairs = evaluate_pairs(m, io, &gadget);
      std::set<std::string> probe(cp.probe_vertices.begin(), cp.probe_vertices.end());
      std::map<int, long long> per_var;
      long long other = 0;
      for (const auto& pr : pairs) {
        const std::string& n1 = m.vertices[pr.vertex1].name;
        const std::string& n2 = m.vertices[pr.vertex2].name;
        if (probe.count(n1) == probe.count(n2)) {
          other++;
          continue;
        }
        const std::string& strand = probe.count(n1) ? n2 : n1;
        for (const auto& me : cp.members) {
          const auto& vp = out.variables[me.var - 1];
          if (std::find(vp.path_vertices.begin(), vp.path_vertices.end(), strand) !=
              vp.path_vertices.end())
            per_var[me.var]++;
        }
      }
      CHECK(other == 0);
      std::vector<long long> counts;
      int three_var = -1;
      for (const auto& me : cp.members) {
        counts.push_back(per_var[me.var]);
        if (per_var[me.var] == 3) three_var = me.var;
      }
      std::sort(counts.begin(), counts.end());
      CHECK(counts == std::vector<long long>{3, 5, 5});
      REQUIRE(three_var > 0);
      // the 3-crossing strand belongs to a literal made true by tau
      bool is_true_literal = false;
      for (const auto& me : cp.members)
        if (me.var == three_var) is_true_literal = tau.value.at(me.var) == !me.negated;
      CHECK(is_true_literal);
    }
  }
}

TEST_CASE("witness battery over random satisfiable formulas") {
  ts::Rng rng(91);
  for (int t = 0; t < 8; ++t) {
    auto [cnf, tau] = random_sat_cnf(rng, 3 + static_cast<int>(rng.below(4)),
                                     1 + static_cast<int>(rng.below(6)));
    ReductionOutput out =
        t % 2 == 0 ? build_paths_instance(cnf) : build_cycle_instance(cnf);
    PipeOrderSet orders = build_witness(out, tau);
    CHECK(evaluate(out.instance, orders).total == out.K);
  }
}

TEST_CASE("grid bound: clusters on integer points of a bounded box") {
  ts::Rng rng(53);
  auto [cnf, tau] = random_sat_cnf(rng, 5, 6);
  for (bool cycle : {false, true}) {
    ReductionOutput out = cycle ? build_cycle_instance(cnf) : build_paths_instance(cnf);
    int m = out.num_clauses, n = out.num_vars;
    for (const auto& c : out.instance.host.clusters) {
      CHECK(rat_den(c.pos.x) == 1);
      CHECK(rat_den(c.pos.y) == 1);
      CHECK(c.pos.x >= 0);
      CHECK(c.pos.x <= 5 * m + 6);
      CHECK(c.pos.y >= -1);
      CHECK(c.pos.y <= n + 1);
    }
  }
}
