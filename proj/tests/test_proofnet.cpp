#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "spk/netsearch.hpp"
#include "spk/prover.hpp"
#include "spk/syntax.hpp"

using namespace spk;

namespace {

long count_linkings(const char* text, LogicId logic, bool planar_only) {
  ProofStructure sk = build_skeleton(parse_sequent(text, logic));
  return enumerate_linkings(sk, planar_only, [](const ProofStructure&) { return false; });
}

int count_links(const ProofStructure& ps, LinkKind k) {
  int n = 0;
  for (const auto& l : ps.links)
    if (l.kind == k) ++n;
  return n;
}

// brute-force subnet oracle: every antichain of positions spans a down-closed
// set; it is a subnet when all axiom partners stay inside; count its roots
bool subnet_violation_brute(const ProofStructure& ps) {
  const auto& forest = *ps.forest;
  int n = static_cast<int>(forest.positions.size());
  REQUIRE(n <= 20);
  for (long mask = 1; mask < (1L << n); ++mask) {
    std::set<int> roots;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) roots.insert(i);
    // antichain check
    bool antichain = true;
    for (int r : roots)
      for (int q : roots) {
        if (r == q) continue;
        auto sub = forest.subtree(r);
        if (std::find(sub.begin(), sub.end(), q) != sub.end()) antichain = false;
      }
    if (!antichain) continue;
    std::set<int> members;
    for (int r : roots)
      for (int id : forest.subtree(r)) members.insert(id);
    bool closed = true;
    for (int id : members) {
      if (forest.at(id).cls != NodeClass::AtomLeaf) continue;
      int partner = ps.partner_of(id);
      if (partner < 0 || !members.count(partner)) closed = false;
    }
    if (!closed) continue;
    // local conclusions = members whose decomposition parent is outside
    int conclusions = 0;
    for (int id : members)
      if (forest.at(id).parent < 0 || !members.count(forest.at(id).parent)) ++conclusions;
    if (conclusions < 2) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("skeleton of the MLL example has the right link kinds") {
  ProofStructure sk = build_skeleton(parse_sequent("A@B, (B*C)^ => C-oA", LogicId::MLL));
  CHECK(count_links(sk, LinkKind::Times) == 2);  // (@)- and (*)+
  CHECK(count_links(sk, LinkKind::Par) == 1);    // (-o)+
  CHECK(count_links(sk, LinkKind::Unary) == 1);  // (^)-
  CHECK(count_links(sk, LinkKind::Axiom) == 0);
}

TEST_CASE("skeleton of an axiom sequent is two atoms and no links") {
  ProofStructure sk = build_skeleton(parse_sequent("A => A", LogicId::MLL));
  CHECK(sk.links.empty());
  CHECK(sk.nodes.size() == 2);
}

TEST_CASE("skeleton of NL Example 1 has two times links") {
  ProofStructure sk = build_skeleton(parse_sequent("(A , ((A\\B)/C , C)) => B", LogicId::NL));
  CHECK(count_links(sk, LinkKind::Times) == 2);
  CHECK(count_links(sk, LinkKind::Par) == 0);
}

TEST_CASE("linking enumeration counts") {
  CHECK(count_linkings("A@B, (B*C)^ => C-oA", LogicId::MLL, false) == 1);
  CHECK(count_linkings("A, A => A*A", LogicId::MLL, false) == 2);  // 2! pairings
  CHECK(count_linkings("A => B", LogicId::MLL, false) == 0);       // unbalanced
  CHECK(count_linkings("A, A, A => A*(A*A)", LogicId::MLL, false) == 6);  // 3!
}

TEST_CASE("planar-only pruning for the Lambek systems") {
  // the crossed matching of A.B => B.A is suppressed
  CHECK(count_linkings("A.B => B.A", LogicId::LambekL, false) == 1);
  CHECK(count_linkings("A.B => B.A", LogicId::LambekL, true) == 0);
  CHECK(count_linkings("C.(C\\A)/B, B => A", LogicId::LambekL, true) == 1);
}

TEST_CASE("dr_check accepts the MLL example net") {
  Sequent s = parse_sequent("A@B, (B*C)^ => C-oA", LogicId::MLL);
  NetSearchResult res = find_proof_net(s);
  REQUIRE(res.found());
  NetVerdict dr = dr_check(*res.net);
  CHECK(dr.is_net);
  CHECK(dr.switchings == 2);  // one par link
  NetVerdict con = contraction_check(*res.net);
  CHECK(con.is_net);
  CHECK(con.contraction_steps > 0);
}

TEST_CASE("dr_check on a single axiom link") {
  NetSearchResult res = find_proof_net(parse_sequent("A => A", LogicId::MLL));
  REQUIRE(res.found());
  CHECK(dr_check(*res.net).is_net);
  NetVerdict con = contraction_check(*res.net);
  CHECK(con.is_net);
  CHECK(con.contraction_steps == 1);
}

TEST_CASE("MILL: Y-o(X*Y) has a net, (Y-oX)*Y has none with a cycle witness") {
  NetSearchResult good = find_proof_net(parse_sequent("X => Y-o(X*Y)", LogicId::MILL));
  CHECK(good.found());

  Sequent bad = parse_sequent("X => (Y-oX)*Y", LogicId::MILL);
  ProofStructure sk = build_skeleton(bad);
  long linkings = 0;
  enumerate_linkings(sk, false, [&](const ProofStructure& ps) {
    ++linkings;
    NetVerdict dr = dr_check(ps);
    CHECK(!dr.is_net);
    CHECK(dr.failure == FailureKind::Cycle);
    NetVerdict con = contraction_check(ps);
    CHECK(!con.is_net);
    // the contraction fixed point keeps more than one vertex
    CHECK(con.detail.find("1 vertices") == std::string::npos);
    return false;
  });
  CHECK(linkings == 1);
  NetSearchResult res = find_proof_net(bad);
  CHECK(!res.found());
  CHECK(res.conclusive);
  CHECK(res.verdict.failure == FailureKind::Cycle);
}

TEST_CASE("the contraction sequence of the worked 10-vertex example") {
  // vertices a..j with the edges of the worked MLL proof structure: two par
  // edges at h, solid decomposition edges elsewhere, three axiom curves
  ProofStructure ps;
  ps.logic = LogicId::MLL;
  for (int i = 0; i < 10; ++i)
    ps.nodes.push_back(StructNode{i, Sign::Neg, Formula::atom(std::string(1, static_cast<char>('a' + i))), true});
  auto edge = [&](LinkKind kind, int concl, std::vector<int> prem) {
    Link l;
    l.kind = kind;
    l.conclusions = {concl};
    l.premises = std::move(prem);
    ps.links.push_back(l);
  };
  // a=[A@B]-, b=A-, c=B-, d=[(B*C)^]-, e=[B*C]+, f=B+, g=C+, h=[C-oA]+, i=C-, j=A+
  edge(LinkKind::Times, 0, {1, 2});
  edge(LinkKind::Unary, 3, {4});
  edge(LinkKind::Times, 4, {5, 6});
  edge(LinkKind::Par, 7, {8, 9});
  Link ax1;
  ax1.kind = LinkKind::Axiom;
  ax1.conclusions = {2, 5};  // c-f
  Link ax2;
  ax2.kind = LinkKind::Axiom;
  ax2.conclusions = {8, 6};  // i-g
  Link ax3;
  ax3.kind = LinkKind::Axiom;
  ax3.conclusions = {1, 9};  // b-j
  ps.links.push_back(ax1);
  ps.links.push_back(ax2);
  ps.links.push_back(ax3);

  NetVerdict con = contraction_check(ps);
  CHECK(con.is_net);                   // terminates in a single vertex
  CHECK(con.contraction_steps <= 10);  // one application per edge at most
  CHECK(con.contraction_steps == 10);  // every edge is consumed exactly once
  CHECK(dr_check(ps).is_net);
}

TEST_CASE("planarity_check matches the L example and rejects crossings") {
  Sequent s = parse_sequent("C.(C\\A)/B, B => A", LogicId::LambekL);
  NetSearchResult res = find_proof_net(s);
  REQUIRE(res.found());
  CHECK(planarity_check(*res.net).is_net);
  CHECK(subnet_check(*res.net).is_net);

  // pairs (1,3),(2,4) over four leaves interleave
  ProofStructure sk = build_skeleton(parse_sequent("A.B => B.A", LogicId::LambekL));
  enumerate_linkings(sk, false, [&](const ProofStructure& ps) {
    NetVerdict v = planarity_check(ps);
    CHECK(!v.is_net);
    CHECK(v.failure == FailureKind::Nonplanar);
    return false;
  });
}

TEST_CASE("planarity necessity: A.B => B.A passes DR but never planarity") {
  REQUIRE(!prove(parse_sequent("A.B => B.A", LogicId::LambekL)).provable());
  ProofStructure sk = build_skeleton(parse_sequent("A.B => B.A", LogicId::LambekL));
  long dr_passing = 0;
  enumerate_linkings(sk, false, [&](const ProofStructure& ps) {
    if (dr_check(ps).is_net) {
      ++dr_passing;
      CHECK(!planarity_check(ps).is_net);
    }
    return false;
  });
  CHECK(dr_passing >= 1);
}

TEST_CASE("planarity is refused for commutative logics") {
  NetSearchResult res = find_proof_net(parse_sequent("A => A", LogicId::MLL));
  REQUIRE(res.found());
  CHECK_THROWS_AS(planarity_check(*res.net), UnsupportedLogic);
  CHECK_THROWS_AS(subnet_check(*res.net), UnsupportedLogic);
}

TEST_CASE("subnet condition: B/(A/A) => B fails with a one-conclusion subnet") {
  REQUIRE(!prove(parse_sequent("B/(A/A) => B", LogicId::LambekL)).provable());
  REQUIRE(prove(parse_sequent("B/(A/A) => B", LogicId::LambekLEps)).provable());

  ProofStructure sk = build_skeleton(parse_sequent("B/(A/A) => B", LogicId::LambekL));
  long seen = 0;
  enumerate_linkings(sk, true, [&](const ProofStructure& ps) {
    ++seen;
    CHECK(dr_check(ps).is_net);
    CHECK(planarity_check(ps).is_net);
    NetVerdict v = subnet_check(ps);
    CHECK(!v.is_net);
    CHECK(v.failure == FailureKind::Subnet);
    CHECK(subnet_violation_brute(ps));
    return false;
  });
  CHECK(seen == 1);
  // so L_eps accepts the same structure that L rejects
  NetSearchResult eps = find_proof_net(parse_sequent("B/(A/A) => B", LogicId::LambekLEps));
  CHECK(eps.found());
  NetSearchResult strict = find_proof_net(parse_sequent("B/(A/A) => B", LogicId::LambekL));
  CHECK(!strict.found());
  CHECK(strict.verdict.failure == FailureKind::Subnet);
}

TEST_CASE("subnet fast check agrees with the brute-force subset oracle") {
  const char* cases[] = {"C.(C\\A)/B, B => A", "A/B, B => A", "B/(A/A) => B",
                         "A, A\\B => B", "A/B, B/A => A"};
  for (const char* t : cases) {
    ProofStructure sk = build_skeleton(parse_sequent(t, LogicId::LambekL));
    enumerate_linkings(sk, true, [&](const ProofStructure& ps) {
      CHECK(subnet_check(ps).is_net == !subnet_violation_brute(ps));
      return false;
    });
  }
}

TEST_CASE("axiom sequent passes the subnet condition") {
  NetSearchResult res = find_proof_net(parse_sequent("A => A", LogicId::LambekL));
  REQUIRE(res.found());
  CHECK(subnet_check(*res.net).is_net);
}

TEST_CASE("find_proof_net agrees with the oracle on goldens") {
  struct Case {
    const char* text;
    LogicId logic;
    bool expect;
  } cases[] = {
      {"A@B, (B*C)^ => C-oA", LogicId::MLL, true},
      {"A => A*A", LogicId::MLL, false},
      {"X => Y-o(X*Y)", LogicId::MILL, true},
      {"X => (Y-oX)*Y", LogicId::MILL, false},
      {"C.(C\\A)/B, B => A", LogicId::LambekL, true},
      {"A.B => B.A", LogicId::LambekL, false},
      {"B/(A/A) => B", LogicId::LambekLEps, true},
      {"B/(A/A) => B", LogicId::LambekL, false},
  };
  for (const auto& c : cases) {
    NetSearchResult res = find_proof_net(parse_sequent(c.text, c.logic));
    CHECK(res.found() == c.expect);
    if (!c.expect) CHECK(res.conclusive);
  }
}

TEST_CASE("leaf order permutations do not change commutative verdicts") {
  // scramble the leaf order of an MLL structure: DR and contraction ignore it
  Sequent s = parse_sequent("A@B, (B*C)^ => C-oA", LogicId::MLL);
  ProofStructure sk = build_skeleton(s);
  std::reverse(sk.leaf_order.begin(), sk.leaf_order.end());
  enumerate_linkings(sk, false, [&](const ProofStructure& ps) {
    CHECK(dr_check(ps).is_net);
    CHECK(contraction_check(ps).is_net);
    return false;
  });
}
