#include "doctest.h"

#include "op_examples.hpp"

TEST_CASE("documented operation examples all hold") {
    for (const auto& outcome : cprec::op_examples::run_all()) {
        INFO(outcome.name << ": " << outcome.message);
        CHECK(outcome.passed);
    }
}
