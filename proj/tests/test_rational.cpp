#include <doctest.h>
#include "qk1/rational.hpp"
TEST_CASE("smoke") { CHECK(qk1::Rational(1,2).str() == "1/2"); }
