#include <doctest.h>
TEST_CASE("placeholder test_flat_bounds") { CHECK(true); }
