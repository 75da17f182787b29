// Copyright 2026 The cvswap Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cvswap/fock.h"
#include "cvswap/gates.h"
#include "json.hpp"

namespace cvswap::cli {

using nlohmann::json;

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Reads `key`, writing `fallback` back into the document when absent so the
/// emitted config shows every value that was used.
template <class T>
T get_or(json &obj, const std::string &key, const T &fallback) {
    if (!obj.contains(key) || obj[key].is_null()) {
        obj[key] = fallback;
        return fallback;
    }
    try {
        return obj[key].get<T>();
    } catch (const json::exception &) {
        throw ConfigError("field '" + key + "' has the wrong type");
    }
}

template <class T>
T require(const json &obj, const std::string &key) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ConfigError("missing field '" + key + "'");
    }
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception &) {
        throw ConfigError("field '" + key + "' has the wrong type");
    }
}

/// A number, [re, im] or {"re": x, "im": y}.
cdouble parse_complex(const json &v);

GateSpec parse_gate(const json &spec);
Circuit parse_circuit(const json &list);

struct PrepContext {
    int cutoff = 10;
    bool renormalize = true;
    std::vector<std::string> *warnings = nullptr;
};

/// State preparation by kind: vacuum, coherent, squeezed, tmss, fock,
/// product, mixture, hybrid.
MixedEnsemble build_prep(const json &spec, const PrepContext &ctx);

/// The single pure state of a preparation; ConfigError for mixtures.
FockState build_pure(const json &spec, const PrepContext &ctx);

}  // namespace cvswap::cli
