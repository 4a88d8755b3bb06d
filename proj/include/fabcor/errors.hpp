// SPDX-License-Identifier: Apache-2.0
//
// fabcor c++ library for fluid-antenna correlation modelling and outage analysis
// Copyright (C) 2026 the fabcor authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef FABCOR_ERRORS_HPP
#define FABCOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fabcor
{

// Raised on bad arguments: out-of-range parameters, malformed geometries,
// or a propagation model applied to an aperture it does not support.
class invalid_input : public std::invalid_argument
{
  public:
    explicit invalid_input(const std::string &msg) : std::invalid_argument(msg) {}
};

// Raised when an iterative numerical routine fails to converge or produces
// values outside its guaranteed range. The message is prefixed with the
// module that detected the fault.
class numerical_fault : public std::runtime_error
{
  public:
    numerical_fault(const std::string &module, const std::string &msg)
        : std::runtime_error(module + ": " + msg), module_(module)
    {
    }
    const std::string &module() const noexcept { return module_; }

  private:
    std::string module_;
};

} // namespace fabcor

#endif
