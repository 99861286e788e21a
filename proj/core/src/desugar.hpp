// Copyright 2026 The sketchkit Authors.
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

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sketchkit/sketch.hpp"

namespace sketchkit::detail {

using ArrowLookup = std::function<const Arrow*(const std::string&)>;

/// Raised when a surface form cannot be expanded (unknown or mismatched
/// arrows); the parser attaches a source span.
class DesugarError : public std::runtime_error {
 public:
  DesugarError(bool unknown_symbol, const std::string& what)
      : std::runtime_error(what), unknown_symbol_(unknown_symbol) {}
  bool unknown_symbol() const { return unknown_symbol_; }

 private:
  bool unknown_symbol_;
};

FiniteLimitConstraint make_terminal(std::string label, NodeId apex);

FiniteLimitConstraint make_product(std::string label, NodeId apex, const std::vector<NodeId>& factors,
                                   const std::vector<ArrowId>& projections);

/// apex = f ×_over g: base {src f, src g, over}, arrows {f, g}, legs on the
/// two sources.
FiniteLimitConstraint make_pullback(std::string label, NodeId apex, const ArrowId& f, const NodeId& over,
                                    const ArrowId& g, const ArrowId& p1, const ArrowId& p2, const ArrowLookup& lookup);

/// apex = eq(f, g): base {src f, dst f}, arrows {f, g}, leg on src f.
FiniteLimitConstraint make_equalizer(std::string label, NodeId apex, const ArrowId& f, const ArrowId& g,
                                     const ArrowId& e, const ArrowLookup& lookup);

}  // namespace sketchkit::detail
