// Copyright 2026 The spinmod Authors
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

#ifndef SPINMOD_ERRORS_HPP
#define SPINMOD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spinmod {

// Error categories map directly onto CLI exit codes.
enum class ErrorKind { config = 2, numeric = 3, io = 4 };

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }

  private:
    ErrorKind kind_;
};

inline Error config_error(const std::string &msg) { return Error(ErrorKind::config, msg); }
inline Error numeric_error(const std::string &msg) { return Error(ErrorKind::numeric, msg); }
inline Error io_error(const std::string &msg) { return Error(ErrorKind::io, msg); }

} // namespace spinmod

#endif
