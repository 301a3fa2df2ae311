#include <gtest/gtest.h>

#include "klm/all.hpp"

TEST(Placeholder_test_klm, Builds) { SUCCEED(); }
