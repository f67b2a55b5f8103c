#include "deltalab/dyadic.hpp"
#include "deltalab/errors.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using deltalab::BigInt;
using deltalab::Dyadic;

TEST_CASE("dyadic normalization keeps the lowest form") {
  CHECK(Dyadic(BigInt(2), 1).str() == "1/2^0");
  CHECK(Dyadic(BigInt(4), 1).str() == "2/2^0");
  CHECK(Dyadic(BigInt(6), 3).str() == "3/2^2");
  CHECK(Dyadic(BigInt(0), 9).str() == "0/2^0");
  CHECK(Dyadic(BigInt(5), 0).str() == "5/2^0");
  CHECK(Dyadic().is_zero());
  CHECK(Dyadic(BigInt(0), 3) == Dyadic());
}

TEST_CASE("dyadic arithmetic is exact") {
  const Dyadic half = Dyadic::pow2(-1);
  const Dyadic quarter = Dyadic::pow2(-2);
  CHECK((half + quarter).str() == "3/2^2");
  CHECK((half - quarter) == quarter);
  CHECK((Dyadic(3) + Dyadic::pow2(3)).str() == "11/2^0");
  CHECK(Dyadic::pow2(0) == Dyadic(1));
  CHECK(quarter.half() == Dyadic::pow2(-3));
  CHECK(half.scaled_pow2(3) == Dyadic(4));
  CHECK(Dyadic(5).scaled_pow2(-2).str() == "5/2^2");
  // Halving an even integer must land back in canonical form.
  CHECK(Dyadic(2).half().str() == "1/2^0");
  CHECK(Dyadic(12).scaled_pow2(-2).str() == "3/2^0");
  CHECK(Dyadic(4).half() == Dyadic(2));
  CHECK_THROWS_AS((void)(quarter - half), deltalab::InvariantError);
}

TEST_CASE("dyadic comparison is a total order") {
  CHECK(Dyadic::pow2(-3) < Dyadic::pow2(-2));
  CHECK(Dyadic(2) > Dyadic::pow2(0));
  CHECK(Dyadic() < Dyadic::pow2(-60));
  CHECK(Dyadic(BigInt(6), 3) == Dyadic(BigInt(3), 2));
  CHECK(Dyadic(BigInt(7), 3) <= Dyadic(BigInt(7), 3));
}

TEST_CASE("dyadic parsing accepts p/2^q and bare integers only") {
  CHECK(Dyadic::parse("3/2^2").str() == "3/2^2");
  CHECK(Dyadic::parse("6/2^3") == Dyadic::parse("3/2^2"));
  CHECK(Dyadic::parse("17") == Dyadic(17));
  CHECK(Dyadic::parse("0") == Dyadic());
  CHECK(Dyadic::parse("0/2^5") == Dyadic());
  for (const char* bad :
       {"", "-1", "1/3", "1/2", "1/2^", "1/2^x", "2^3", "3.5", "a", "1 /2^1",
        "1/2^-1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS((void)Dyadic::parse(bad), deltalab::ParseError);
  }
}

TEST_CASE("dyadic string form round-trips") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 500; ++i) {
    const Dyadic value(BigInt(rng() % 4096), rng() % 24);
    CHECK(Dyadic::parse(value.str()) == value);
  }
}

TEST_CASE("dyadic algebra holds on random values") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 300; ++i) {
    const Dyadic a(BigInt(rng() % 1024), rng() % 16);
    const Dyadic b(BigInt(rng() % 1024), rng() % 16);
    const Dyadic c(BigInt(rng() % 1024), rng() % 16);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a + b) - b == a);
    const int ways = (a < b ? 1 : 0) + (a == b ? 1 : 0) + (a > b ? 1 : 0);
    CHECK(ways == 1);
    if (a <= b) {
      CHECK(a + c <= b + c);
      CHECK(b - a + a == b);
    }
  }
}

TEST_CASE("pow2 spans both directions") {
  CHECK(Dyadic::pow2(10).str() == "1024/2^0");
  CHECK(Dyadic::pow2(-10).str() == "1/2^10");
  Dyadic sum;
  for (int k = 1; k <= 30; ++k) sum += Dyadic::pow2(-k);
  CHECK(sum + Dyadic::pow2(-30) == Dyadic(1));
}
