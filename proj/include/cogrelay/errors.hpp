/*
   Copyright 2026 The cogrelay Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace cogrelay {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument violated a documented precondition.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A scenario or configuration document is malformed or inconsistent.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A numeric procedure failed to produce a trustworthy answer.
class NumericError : public Error {
public:
    using Error::Error;
};

class IllConditionedError : public NumericError {
public:
    using NumericError::NumericError;
};

class ConvergenceError : public NumericError {
public:
    using NumericError::NumericError;
};

/// An iterate left the feasible set and could not be recovered.
class InfeasibleError : public NumericError {
public:
    using NumericError::NumericError;
};

namespace detail {

template <class E = DomainError>
inline void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw E(what);
    }
}

}  // namespace detail
}  // namespace cogrelay
