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

#include "qfs/serialize.hpp"

#include <sstream>

namespace qfs {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

Fq entry_from_text(const Field& f, const std::string& text) {
    auto digits = split(text, ':');
    if (digits.size() != f.e()) raise(ErrorCode::OutOfRange, "coefficient tuple length");
    uint32_t v = 0, mult = 1;
    for (const auto& d : digits) {
        uint32_t c = static_cast<uint32_t>(std::stoul(d));
        if (c >= f.p()) raise(ErrorCode::OutOfRange, "coefficient exceeds p");
        v += c * mult;
        mult *= f.p();
    }
    return Fq(&f, v);
}

const char* involution_token(const Involution& inv) {
    switch (inv.kind) {
        case InvolutionKind::Identity: return "id";
        case InvolutionKind::FrobeniusHalf: return "frob";
        case InvolutionKind::SplitSwap: return "swap";
    }
    return "?";
}

}  // namespace

std::string to_text(const Subspace& s) {
    if (s.dim() == 0) return "-";
    std::ostringstream os;
    for (Eigen::Index i = 0; i < s.basis.rows(); ++i) {
        if (i) os << ';';
        for (Eigen::Index j = 0; j < s.basis.cols(); ++j) {
            if (j) os << ',';
            os << s.basis(i, j).str();
        }
    }
    return os.str();
}

Subspace subspace_from_text(const Field& f, Eigen::Index ambient, const std::string& text) {
    if (text == "-") return zero_subspace(f, ambient);
    auto rows = split(text, ';');
    Mat m = zeros(f, static_cast<Eigen::Index>(rows.size()), ambient);
    for (size_t i = 0; i < rows.size(); ++i) {
        auto entries = split(rows[i], ',');
        if (entries.size() != static_cast<size_t>(ambient)) raise(ErrorCode::AmbientMismatch, "row length");
        for (size_t j = 0; j < entries.size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entry_from_text(f, entries[j]);
    }
    return span(ambient, m);
}

std::string to_text(const QuadraticSpace& v) {
    std::ostringstream os;
    os << "gf(" << v.field().p() << "^" << v.field().e() << ")|" << involution_token(v.sigma()) << "|"
       << (v.realized().param().lambda == 1 ? "+1" : "-1") << "|"
       << (v.realized().param().choice == FormParameter::Choice::Min ? "min" : "max") << "|";
    for (Eigen::Index i = 0; i < v.dim(); ++i) {
        if (i) os << ';';
        for (Eigen::Index j = 0; j < v.dim(); ++j) {
            if (j) os << ',';
            os << v.gram_s()(i, j).str();
        }
    }
    return os.str();
}

QuadraticSpace space_from_text(const std::string& text) {
    auto parts = split(text, '|');
    if (parts.size() != 5) raise(ErrorCode::OutOfRange, "space text needs 5 fields");
    uint32_t p = 0, e = 0;
    if (std::sscanf(parts[0].c_str(), "gf(%u^%u)", &p, &e) != 2)
        raise(ErrorCode::OutOfRange, "bad ring descriptor");
    auto field = Field::make(p, e);
    Involution sigma{InvolutionKind::Identity};
    if (parts[1] == "frob") sigma.kind = InvolutionKind::FrobeniusHalf;
    else if (parts[1] != "id") raise(ErrorCode::OutOfRange, "bad involution token");
    FormParameter param;
    param.lambda = (parts[2] == "-1") ? -1 : 1;
    param.choice = (parts[3] == "max") ? FormParameter::Choice::Max : FormParameter::Choice::Min;
    auto rows = split(parts[4], ';');
    Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    Mat s = zeros(*field, n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        auto entries = split(rows[i], ',');
        if (entries.size() != static_cast<size_t>(n)) raise(ErrorCode::DimensionMismatch, "Gram row length");
        for (Eigen::Index j = 0; j < n; ++j) s(i, j) = entry_from_text(*field, entries[static_cast<size_t>(j)]);
    }
    return QuadraticSpace(field, sigma, param, s);
}

std::string to_text(const IsotropicSet& set) {
    std::ostringstream os;
    for (const auto& m : set.members) os << to_text(m) << "\n";
    return os.str();
}

}  // namespace qfs
