#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "raschkit/error.hpp"
#include "raschkit/model.hpp"

namespace raschkit::testing {

std::string data_path(const std::string& name);
std::string read_data(const std::string& name);

// Fresh empty directory under the system temp dir.
std::string scratch_dir(const std::string& name);

// Random tiny designs for the grid oracle. Empty when the draw has an extreme
// element (or, for the partial credit design, an item missing a category).
std::optional<ObservationSet> random_dichotomous_three_facet(std::uint64_t seed);
std::optional<ObservationSet> random_partial_credit_5x3(std::uint64_t seed);

}  // namespace raschkit::testing

#define EXPECT_ERROR_KIND(statement, expected_kind)                                   \
    do {                                                                              \
        try {                                                                         \
            statement;                                                                \
            ADD_FAILURE() << "expected " #expected_kind " from " #statement;          \
        } catch (const ::raschkit::Error& e) {                                        \
            EXPECT_EQ(e.kind(), expected_kind) << e.what();                           \
        }                                                                             \
    } while (0)
