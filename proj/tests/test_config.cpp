#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "henderson/config.hpp"
#include "henderson/io.hpp"

using namespace henderson;

namespace {

std::filesystem::path scratch_dir() {
  auto d = std::filesystem::temp_directory_path() / "henderson_config_test";
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("config parsing") {
  auto c = parse_config(
      "# comment line\n"
      "beta = 2.0\n"
      "grid.R = 8   # trailing comment\n"
      "grid.M = 161\n"
      "truncation.n_max = 3\n"
      "potential.kind = lj_type\n"
      "potential.epsilon = 0.3\n"
      "target.rho_star = 0.05\n"
      "imc.max_iters = 12\n"
      "imc.diagonal_only = true\n"
      "oracle.N_cap = 3\n");
  CHECK(c.beta == 2.0);
  CHECK(c.R == 8.0);
  CHECK(c.M == 161);
  CHECK(c.n_max == 3);
  CHECK(c.imc.trunc.n_max == 3);
  CHECK(c.potential_kind == "lj_type");
  REQUIRE(c.rho_star.has_value());
  CHECK(*c.rho_star == 0.05);
  CHECK(c.imc.max_iters == 12);
  CHECK(c.imc.diagonal_only);
  CHECK(c.box.N_cap == 3);
  CHECK(c.grid() == GridSpec(8.0, 161));
  CHECK_FALSE(c.mu.has_value());

  auto d = parse_config("");
  CHECK(d.potential_kind == "hard_rod");
  CHECK(d.n_max == 4);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("bogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("beta\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("beta = \n"), ConfigError);
  CHECK_THROWS_AS(parse_config("beta = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("beta = 1.0x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("beta = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("grid.M = 100\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("grid.M = 1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("truncation.n_max = 6\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("potential.kind = morse\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("potential.kind = tabulated\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("target.rho_star = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("imc.damping = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("imc.diagonal_only = maybe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("oracle.N_cap = 9\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/run.cfg"), ConfigError);
}

TEST_CASE("config hash is deterministic and content-sensitive") {
  auto a = parse_config("beta = 1\ngrid.M = 161\n");
  auto b = parse_config("# same content\ngrid.M   =   161\n\nbeta=1\n");
  auto c = parse_config("beta = 1\ngrid.M = 163\n");
  CHECK(a.hash.size() == 16);
  CHECK(a.hash == b.hash);
  CHECK(a.hash != c.hash);
  CHECK(normalized(a) == "beta = 1\ngrid.M = 161\n");
}

TEST_CASE("SHA-256 digest") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("building potentials from a config") {
  auto ideal = build_potential(parse_config("potential.kind = ideal\ngrid.R = 4\ngrid.M = 81\n"));
  CHECK(mayer(ideal, ideal.spec()).max_abs() == 0.0);

  auto rod = build_potential(parse_config("potential.kind = hard_rod\ngrid.R = 4\ngrid.M = 81\n"));
  REQUIRE(rod.hardcore_radius.has_value());
  CHECK(*rod.hardcore_radius == 1.0);

  auto lj = build_potential(parse_config(
      "potential.kind = lj_type\npotential.epsilon = 0.3\ngrid.R = 4\ngrid.M = 81\n"
      "potential.majorant_C = 2.5\n"));
  CHECK(lj.majorant.C == 2.5);
  CHECK(lj.boltzmann[lj.spec().center()] == 0.0);
}

TEST_CASE("tabulated potential with an inferred hard core") {
  auto dir = scratch_dir();
  {
    std::ofstream f(dir / "u.dat");
    f << "# x u\n";
    for (int k = 0; k <= 40; ++k) {
      double x = 0.1 * k;
      if (x < 1.0 - 1e-9) f << x << " inf\n";
      else f << x << " " << -0.3 * std::pow(2.0 / (1.0 + x * x), 3.0) << "\n";
    }
  }
  {
    std::ofstream f(dir / "run.cfg");
    f << "potential.kind = tabulated\npotential.path = u.dat\ngrid.R = 4\ngrid.M = 81\n";
  }
  auto cfg = load_config((dir / "run.cfg").string());
  CHECK(cfg.potential_path == (dir / "u.dat").string());
  auto p = build_potential(cfg);
  auto ref = lj_type(cfg.grid(), 1.0, 0.3, 1.0, 6.0);
  REQUIRE(p.hardcore_radius.has_value());
  CHECK(*p.hardcore_radius == doctest::Approx(1.0).epsilon(1e-12));
  for (int k = 0; k < p.spec().M(); ++k)
    CHECK(p.boltzmann[k] == doctest::Approx(ref.boltzmann[k]).epsilon(1e-5));
}

TEST_CASE("two-column tables") {
  auto t = parse_table("# header\n0 1\n0.5 2\n1.0 4\n");
  REQUIRE(t.x.size() == 3);
  CHECK(t.y[2] == 4.0);
  CHECK_THROWS(parse_table("0 1\n0.5\n"));
  CHECK_THROWS(parse_table("0.5 1\n0 2\n"));

  GridSpec g(1.0, 5);
  auto f = table_to_grid(t, g);
  CHECK(f[2] == 1.0);
  CHECK(f[3] == 2.0);
  CHECK(f[1] == 2.0);
  CHECK(f[4] == 4.0);
  auto h = table_to_grid(parse_table("0 0\n1 1\n"), GridSpec(1.0, 9));
  CHECK(h[5] == doctest::Approx(0.25));

  auto text = format_table(f, {"config_hash abc", "n_max 4"});
  CHECK(text.rfind("# config_hash abc\n# n_max 4\n", 0) == 0);
  auto back = table_to_grid(parse_table(text), g);
  for (int k = 0; k < g.M(); ++k) CHECK(back[k] == f[k]);
}
