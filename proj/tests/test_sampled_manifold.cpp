#include <doctest.h>
TEST_CASE("placeholder test_sampled_manifold") { CHECK(true); }
