// sfdi/errors.hpp

// Copyright 2026  SFDI toolkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace sfdi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Signal / analysis errors.
class EmptySignal : public Error { public: using Error::Error; };
class InvalidWindow : public Error { public: using Error::Error; };
class UnsupportedRate : public Error { public: using Error::Error; };
class InvalidLag : public Error { public: using Error::Error; };
class DegenerateFrame : public Error { public: using Error::Error; };
class NumericalBreakdown : public Error { public: using Error::Error; };

// File / corpus errors.
class UnsupportedFormat : public Error { public: using Error::Error; };
class UnsupportedChannels : public Error { public: using Error::Error; };
class CorruptFile : public Error { public: using Error::Error; };
class InvalidLabels : public Error { public: using Error::Error; };

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Evaluation errors.
class ZeroSignalPower : public Error { public: using Error::Error; };
class UndefinedSweep : public Error { public: using Error::Error; };

}  // namespace sfdi
