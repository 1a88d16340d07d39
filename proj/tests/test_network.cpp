#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linerate/errors.hpp"
#include "linerate/network.hpp"

#include "test_util.hpp"

#include <string>

using namespace linerate;
using namespace linerate::opf;
using doctest::Approx;

namespace {
const std::string kDataDir = LINERATE_DATA_DIR;
}

TEST_CASE("bundled 30-bus case loads with the expected shape") {
  const NetworkCase net = load_matpower_case(kDataDir + "/case30.m");
  CHECK(net.base_mva == Approx(100.0));
  CHECK(net.buses.size() == 30);
  CHECK(net.lines.size() == 41);
  CHECK(net.generators.size() == 6);
  CHECK(net.reference_bus == 0);
  CHECK(net.total_base_load_mw() == Approx(189.2));

  // spot values
  CHECK(net.buses[1].id == 2);
  CHECK(net.buses[1].base_load_mw == Approx(21.7));
  CHECK(net.lines[0].susceptance == Approx(1.0 / 0.06));
  CHECK(net.lines[0].base_limit_mw == Approx(130.0));
  CHECK(net.generators[0].p_max_mw == Approx(80.0));
  CHECK(net.generators[0].cost.quadratic == Approx(0.02));
  CHECK(net.generators[0].cost.linear == Approx(2.0));
  CHECK(net.generators[5].bus == net.bus_index(13));

  // sidecar labels
  CHECK(net.name == "30-bus test system");
  CHECK(net.buses[0].label == "Glen Lyn");
}

TEST_CASE("bundled 3-bus case loads") {
  const NetworkCase net = load_matpower_case(kDataDir + "/case3.m");
  CHECK(net.buses.size() == 3);
  CHECK(net.lines.size() == 3);
  CHECK(net.generators.size() == 2);
  CHECK(net.total_base_load_mw() == Approx(150.0));
}

TEST_CASE("parser rejects malformed cases") {
  testutil::TempDir tmp("cases");

  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_matpower_case(tmp.file("missing.m")), IoError);
  }

  SUBCASE("no reference bus") {
    const std::string path = tmp.file("noref.m");
    testutil::write_file(path, R"(function mpc = noref
mpc.baseMVA = 100;
mpc.bus = [
 1 1 0 0 0 0 1 1 0 135 1 1.05 0.95;
 2 1 10 0 0 0 1 1 0 135 1 1.05 0.95;
];
mpc.gen = [ 1 0 0 0 0 1 100 1 50 0; ];
mpc.branch = [ 1 2 0.01 0.1 0 40 40 40 0 0 1 -360 360; ];
mpc.gencost = [ 2 0 0 3 0.0 10 0; ];
)");
    CHECK_THROWS_WITH_AS(load_matpower_case(path), doctest::Contains("reference"),
                         IoError);
  }

  SUBCASE("nonconvex cost") {
    const std::string path = tmp.file("concave.m");
    testutil::write_file(path, R"(function mpc = concave
mpc.baseMVA = 100;
mpc.bus = [
 1 3 0 0 0 0 1 1 0 135 1 1.05 0.95;
 2 1 10 0 0 0 1 1 0 135 1 1.05 0.95;
];
mpc.gen = [ 1 0 0 0 0 1 100 1 50 0; ];
mpc.branch = [ 1 2 0.01 0.1 0 40 40 40 0 0 1 -360 360; ];
mpc.gencost = [ 2 0 0 3 -0.5 10 0; ];
)");
    CHECK_THROWS_WITH_AS(load_matpower_case(path), doctest::Contains("convex"),
                         std::invalid_argument);
  }

  SUBCASE("disconnected network") {
    const std::string path = tmp.file("split.m");
    testutil::write_file(path, R"(function mpc = split
mpc.baseMVA = 100;
mpc.bus = [
 1 3 0 0 0 0 1 1 0 135 1 1.05 0.95;
 2 1 10 0 0 0 1 1 0 135 1 1.05 0.95;
 3 1 10 0 0 0 1 1 0 135 1 1.05 0.95;
];
mpc.gen = [ 1 0 0 0 0 1 100 1 50 0; ];
mpc.branch = [ 1 2 0.01 0.1 0 40 40 40 0 0 1 -360 360; ];
mpc.gencost = [ 2 0 0 3 0.0 10 0; ];
)");
    CHECK_THROWS_WITH_AS(load_matpower_case(path), doctest::Contains("not connected"),
                         std::invalid_argument);
  }

  SUBCASE("out-of-service branches are skipped") {
    const std::string path = tmp.file("offline.m");
    testutil::write_file(path, R"(function mpc = offline
mpc.baseMVA = 100;
mpc.bus = [
 1 3 0 0 0 0 1 1 0 135 1 1.05 0.95;
 2 1 10 0 0 0 1 1 0 135 1 1.05 0.95;
];
mpc.gen = [ 1 0 0 0 0 1 100 1 50 0; ];
mpc.branch = [
 1 2 0.01 0.1 0 40 40 40 0 0 1 -360 360;
 1 2 0.01 0.2 0 40 40 40 0 0 0 -360 360;
];
mpc.gencost = [ 2 0 0 3 0.0 10 0; ];
)");
    CHECK(load_matpower_case(path).lines.size() == 1);
  }

  SUBCASE("zero line limit is rejected") {
    const std::string path = tmp.file("nolimit.m");
    testutil::write_file(path, R"(function mpc = nolimit
mpc.baseMVA = 100;
mpc.bus = [
 1 3 0 0 0 0 1 1 0 135 1 1.05 0.95;
 2 1 10 0 0 0 1 1 0 135 1 1.05 0.95;
];
mpc.gen = [ 1 0 0 0 0 1 100 1 50 0; ];
mpc.branch = [ 1 2 0.01 0.1 0 0 0 0 0 0 1 -360 360; ];
mpc.gencost = [ 2 0 0 3 0.0 10 0; ];
)");
    CHECK_THROWS_AS(load_matpower_case(path), std::invalid_argument);
  }
}

TEST_CASE("validate catches structural defects") {
  NetworkCase net = testutil::two_bus_case(50.0, 100.0);
  CHECK_NOTHROW(validate(net));

  SUBCASE("generator range") {
    net.generators[0].p_min_mw = 120.0;
    CHECK_THROWS_AS(validate(net), std::invalid_argument);
  }
  SUBCASE("reference out of range") {
    net.reference_bus = 5;
    CHECK_THROWS_AS(validate(net), std::invalid_argument);
  }
  SUBCASE("self loop") {
    net.lines[0].to_bus = 0;
    CHECK_THROWS_AS(validate(net), std::invalid_argument);
  }
  SUBCASE("negative load") {
    net.buses[1].base_load_mw = -5.0;
    CHECK_THROWS_AS(validate(net), std::invalid_argument);
  }
}
