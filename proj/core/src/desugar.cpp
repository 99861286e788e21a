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

#include "desugar.hpp"

#include <set>

namespace sketchkit::detail {

namespace {

const Arrow& require(const ArrowLookup& lookup, const ArrowId& id) {
  const Arrow* a = lookup(id);
  if (a == nullptr) throw DesugarError(true, "unknown arrow '" + id + "'");
  return *a;
}

}  // namespace

FiniteLimitConstraint make_terminal(std::string label, NodeId apex) {
  FiniteLimitConstraint c;
  c.label = std::move(label);
  c.apex = std::move(apex);
  c.form = LimitForm::Terminal;
  return c;
}

FiniteLimitConstraint make_product(std::string label, NodeId apex, const std::vector<NodeId>& factors,
                                   const std::vector<ArrowId>& projections) {
  if (factors.size() != projections.size()) {
    throw DesugarError(false, "product has " + std::to_string(factors.size()) + " factors but " +
                                  std::to_string(projections.size()) + " projections");
  }
  FiniteLimitConstraint c;
  c.label = std::move(label);
  c.apex = std::move(apex);
  c.form = LimitForm::Product;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (!c.legs.emplace(factors[k], projections[k]).second) {
      throw DesugarError(false, "product factor '" + factors[k] + "' repeated; factors must be distinct nodes");
    }
    c.base_nodes.push_back(factors[k]);
  }
  return c;
}

FiniteLimitConstraint make_pullback(std::string label, NodeId apex, const ArrowId& f, const NodeId& over,
                                    const ArrowId& g, const ArrowId& p1, const ArrowId& p2, const ArrowLookup& lookup) {
  const Arrow& fa = require(lookup, f);
  const Arrow& ga = require(lookup, g);
  if (fa.dst != over || ga.dst != over) {
    throw DesugarError(false, "pullback arrows '" + f + "' and '" + g + "' must both end at '" + over + "'");
  }
  if (fa.src == ga.src || fa.src == over || ga.src == over) {
    throw DesugarError(false, "pullback of '" + f + "' and '" + g + "' needs three distinct nodes");
  }
  FiniteLimitConstraint c;
  c.label = std::move(label);
  c.apex = std::move(apex);
  c.form = LimitForm::Pullback;
  c.base_nodes = {fa.src, ga.src, over};
  c.base_arrows = {f, g};
  c.legs = {{fa.src, p1}, {ga.src, p2}};
  return c;
}

FiniteLimitConstraint make_equalizer(std::string label, NodeId apex, const ArrowId& f, const ArrowId& g,
                                     const ArrowId& e, const ArrowLookup& lookup) {
  const Arrow& fa = require(lookup, f);
  const Arrow& ga = require(lookup, g);
  if (fa.src != ga.src || fa.dst != ga.dst) {
    throw DesugarError(false, "equalizer arrows '" + f + "' and '" + g + "' must be parallel");
  }
  if (fa.src == fa.dst) {
    throw DesugarError(false, "equalizer of endo-arrows '" + f + "' and '" + g + "' is not supported");
  }
  FiniteLimitConstraint c;
  c.label = std::move(label);
  c.apex = std::move(apex);
  c.form = LimitForm::Equalizer;
  c.base_nodes = {fa.src, fa.dst};
  c.base_arrows = {f, g};
  c.legs = {{fa.src, e}};
  return c;
}

}  // namespace sketchkit::detail
