#include <doctest.h>
TEST_CASE("placeholder test_experiment") { CHECK(true); }
