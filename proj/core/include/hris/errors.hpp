// SPDX-License-Identifier: Apache-2.0
//
// hris-uav: joint channel and direction estimation for HRIS-assisted UAV links
// Copyright (C) 2026 The hris-uav authors
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

#ifndef HRIS_ERRORS_HPP
#define HRIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hris
{
    // Base for all errors raised by the library
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class InvalidArgument : public Error
    {
    public:
        using Error::Error;
    };

    // Coincident node positions or otherwise unusable scenario geometry
    class GeometryError : public Error
    {
    public:
        using Error::Error;
    };

    class DimensionError : public Error
    {
    public:
        using Error::Error;
    };

    // Fisher information is singular, so the bound does not exist
    class UnboundedCrlb : public Error
    {
    public:
        using Error::Error;
    };

    // The measurement model is numerically degenerate (e.g. an all-zero channel estimate)
    class IllConditioned : public Error
    {
    public:
        using Error::Error;
    };

    class EstimationFailure : public Error
    {
    public:
        using Error::Error;
    };

    class ConfigError : public Error
    {
    public:
        using Error::Error;
    };

    class IoError : public Error
    {
    public:
        using Error::Error;
    };
}

#endif
