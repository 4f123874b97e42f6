#include "lamlab/deep_stack.hpp"

#include <gtest/gtest.h>

// Tests build deep terms; run them on the same large stack the tool uses.
int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    int rc = 0;
    lamlab::run_on_deep_stack([&] { rc = RUN_ALL_TESTS(); });
    return rc;
}
