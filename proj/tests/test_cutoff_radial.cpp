#include <doctest.h>
TEST_CASE("placeholder test_cutoff_radial") { CHECK(true); }
