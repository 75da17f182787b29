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

#include "cvswap/state_io.h"

#include <fstream>

namespace cvswap {

nlohmann::json state_to_json(const FockState &state) {
    nlohmann::json amps = nlohmann::json::array();
    for (const cdouble &a : state.amplitudes()) {
        amps.push_back(a.real());
        amps.push_back(a.imag());
    }
    return {{"modes", state.modes()}, {"per_mode_max", state.cutoff().per_mode_max}, {"amplitudes", amps}};
}

FockState state_from_json(const nlohmann::json &doc) {
    try {
        const int modes = doc.at("modes").get<int>();
        CutoffSpec cutoff(doc.at("per_mode_max").get<std::vector<int>>());
        if (cutoff.modes() != modes) {
            throw std::invalid_argument("state document: per_mode_max length differs from modes");
        }
        const auto &amps = doc.at("amplitudes");
        if (amps.size() != 2 * cutoff.dimension()) {
            throw std::invalid_argument("state document: amplitude list has the wrong length");
        }
        std::vector<cdouble> values(cutoff.dimension());
        for (std::size_t k = 0; k < values.size(); ++k) {
            values[k] = {amps[2 * k].get<double>(), amps[2 * k + 1].get<double>()};
        }
        return FockState(std::move(cutoff), std::move(values));
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("state document: ") + e.what());
    }
}

void save_state(const FockState &state, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << state_to_json(state).dump() << '\n';
}

FockState load_state(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("state document: ") + e.what());
    }
    return state_from_json(doc);
}

}  // namespace cvswap
