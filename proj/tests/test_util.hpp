// Copyright 2026 The cvmaser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVMASER_TESTS_TEST_UTIL_HPP
#define CVMASER_TESTS_TEST_UTIL_HPP

#include <gtest/gtest.h>

#include "cvmaser/error.hpp"

#define EXPECT_CVMASER_ERROR(stmt, expected_kind)                                                  \
    do {                                                                                           \
        try {                                                                                      \
            (void)(stmt);                                                                          \
            ADD_FAILURE() << "expected " << cvmaser::error_kind_name(expected_kind) << " from " #stmt; \
        } catch (const cvmaser::Error &e_) {                                                       \
            EXPECT_EQ(e_.kind(), expected_kind) << e_.what();                                      \
        }                                                                                          \
    } while (0)

#endif
