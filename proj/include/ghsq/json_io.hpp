#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ghsq/density.hpp"

namespace ghsq {

/// {"dim": n, "labels": [...], "re": [[...]], "im": [[...]]}, row-major.
inline nlohmann::json density_to_json(const DensityMatrix& rho) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int i = 0; i < rho.entries().rows(); ++i) {
        nlohmann::json rr = nlohmann::json::array();
        nlohmann::json ii = nlohmann::json::array();
        for (int j = 0; j < rho.entries().cols(); ++j) {
            rr.push_back(rho(i, j).real());
            ii.push_back(rho(i, j).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    return {{"dim", rho.dim()}, {"labels", rho.labels()}, {"re", re}, {"im", im}};
}

/// Shape errors are ParseError; dimension support is checked by validate_state().
inline DensityMatrix density_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw ParseError("density matrix JSON must be an object");
        const int dim = j.at("dim").get<int>();
        if (dim <= 0) throw ParseError("dim must be positive");
        const auto& re = j.at("re");
        const nlohmann::json im = j.contains("im") ? j.at("im") : nlohmann::json();
        if (!re.is_array() || static_cast<int>(re.size()) != dim)
            throw ParseError("'re' must be an array of " + std::to_string(dim) + " rows");
        if (!im.is_null() && (!im.is_array() || static_cast<int>(im.size()) != dim))
            throw ParseError("'im' must be an array of " + std::to_string(dim) + " rows");

        Eigen::MatrixXcd m(dim, dim);
        for (int r = 0; r < dim; ++r) {
            const auto& row = re.at(static_cast<std::size_t>(r));
            if (!row.is_array() || static_cast<int>(row.size()) != dim)
                throw ParseError("row " + std::to_string(r) + " of 're' must have " + std::to_string(dim) + " entries");
            for (int c = 0; c < dim; ++c) {
                double imag = 0.0;
                if (!im.is_null()) {
                    const auto& irow = im.at(static_cast<std::size_t>(r));
                    if (!irow.is_array() || static_cast<int>(irow.size()) != dim)
                        throw ParseError("row " + std::to_string(r) + " of 'im' must have " +
                                         std::to_string(dim) + " entries");
                    imag = irow.at(static_cast<std::size_t>(c)).get<double>();
                }
                m(r, c) = cplx{row.at(static_cast<std::size_t>(c)).get<double>(), imag};
            }
        }
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        return DensityMatrix(std::move(m), std::move(labels));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("density matrix JSON: ") + e.what());
    }
}

inline DensityMatrix load_density(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open state file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("cannot parse '" + path + "': " + e.what());
    }
    return density_from_json(j);
}

inline void save_density(const std::string& path, const DensityMatrix& rho) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write state file '" + path + "'");
    out << density_to_json(rho).dump(2) << '\n';
}

} // namespace ghsq
