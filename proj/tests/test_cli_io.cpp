#include <doctest.h>

#include "mcauchy/json_io.hpp"
#include "mcauchy/rng.hpp"

using namespace mcauchy;

TEST_CASE("moebius map json round trip") {
  const MoebiusMap m(random_rotation(2, 3).matrix(), -1.25, Vec::Constant(2, 0.5),
                     Vec::Constant(2, -0.75), 2);
  const nlohmann::json j = to_json(m);
  CHECK(j.contains("A"));
  CHECK(j.contains("gamma"));
  CHECK(j.contains("a"));
  CHECK(j.contains("b"));
  CHECK(j.contains("epsilon"));
  const MoebiusMap back = moebius_map_from_json(j);
  CHECK(back.A == m.A);
  CHECK(back.gamma == m.gamma);
  CHECK(back.a == m.a);
  CHECK(back.b == m.b);
  CHECK(back.epsilon == m.epsilon);
}

TEST_CASE("chain json round trip preserves order of application") {
  const MoebiusChain c =
      chain_compose(MoebiusChain(MoebiusMap::shift(Vec::Constant(1, 2.0))),
                    MoebiusChain(MoebiusMap::scale(1, 3.0)));
  const MoebiusChain back = moebius_chain_from_json(to_json(c));
  // (3x) then (+2): 1 -> 5
  const Vec img = chain_apply(back, ExtendedPoint(Vec::Constant(1, 1.0))).coords();
  CHECK(img(0) == 5.0);
}

TEST_CASE("sphere moebius json round trip") {
  Vec phi(3);
  phi << 0.2, -0.4, 0.1;
  const SphereMoebius s(random_rotation(3, 9), phi);
  const SphereMoebius back = sphere_moebius_from_json(to_json(s));
  CHECK(back.rotation().matrix() == s.rotation().matrix());
  CHECK(back.phi() == s.phi());
}

TEST_CASE("json parsing rejects malformed input") {
  CHECK_THROWS(moebius_map_from_json(nlohmann::json::parse(R"({"A": [[1,0],[0,1]]})")));
  CHECK_THROWS(vector_from_json(nlohmann::json::parse(R"({"x": 1})")));
  CHECK_THROWS(matrix_from_json(nlohmann::json::parse(R"([[1,0],[0]])")));
}
