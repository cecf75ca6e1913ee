// Copyright 2026 The lzphi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <gtest/gtest.h>

#include "lzphi/error.hpp"

// Expects `expr` to throw lzphi::Error with the given code.
#define EXPECT_LZPHI_ERROR(expr, error_code)                                                                 \
    do {                                                                                                     \
        try {                                                                                                \
            (void)(expr);                                                                                    \
            ADD_FAILURE() << #expr " did not throw";                                                         \
        } catch (const lzphi::Error &lzphi_error_) {                                                         \
            EXPECT_EQ(lzphi_error_.code(), error_code) << lzphi_error_.what();                               \
        }                                                                                                    \
    } while (false)
