/*
 * Copyright 2026 The qfs authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>

#include "qfs/maxiso.hpp"
#include "qfs/quadspace.hpp"

namespace qfs {

/// Canonical text for a subspace: rows joined by ';', entries by ',',
/// polynomial coefficients by ':' (constant term first).  The empty
/// subspace serializes to "-".
std::string to_text(const Subspace& s);
Subspace subspace_from_text(const Field& f, Eigen::Index ambient, const std::string& text);

/// Canonical text for a quadratic space: ring descriptor, involution,
/// lambda, parameter choice, then the S-Gram rows.
std::string to_text(const QuadraticSpace& v);
QuadraticSpace space_from_text(const std::string& text);

/// Line-oriented: one RREF basis per line, in canonical member order.
std::string to_text(const IsotropicSet& set);

}  // namespace qfs
