#include <gtest/gtest.h>

#include "klm/all.hpp"

TEST(Placeholder_test_cli, Builds) { SUCCEED(); }
