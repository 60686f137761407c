#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "teich/beltrami.hpp"
#include "teich/bers.hpp"
#include "teich/circle_map.hpp"
#include "teich/dynamics.hpp"
#include "teich/solver.hpp"

namespace teich::io {

namespace fs = std::filesystem;

std::string read_text(const fs::path& p);
void write_text(const fs::path& p, const std::string& text);
nlohmann::json read_json(const fs::path& p);
// Pretty-printed with sorted keys so identical reports are byte-identical.
void write_json(const fs::path& p, const nlohmann::json& j);

// <stem>.csv plus the <stem>.json sidecar {sup_bound, grid_hash}.
void save_field(const BeltramiField& mu, const fs::path& dir, const std::string& stem);
BeltramiField load_field(const GridSpec& spec, const fs::path& dir, const std::string& stem);

// inner.csv, outer.csv and meta.json under dir.
void save_map(const SolvedMap& f, const fs::path& dir);
SolvedMap load_map(const BeltramiField& source, const fs::path& dir);

// <stem>_near.csv, <stem>_far.csv and <stem>.json (report plus at_infinity).
void save_form(const QuadraticForm& phi, const fs::path& dir, const std::string& stem,
               const Config& cfg = default_config());
QuadraticForm load_form(const GridSpec& spec, const fs::path& dir, const std::string& stem);

void save_germ(const Germ1D& g, const fs::path& p);
Germ1D load_germ(const fs::path& p, double alpha);

// theta,lift,derivative
std::string circle_to_csv(const CircleMap& g);
CircleMap circle_from_csv(const std::string& text);

}  // namespace teich::io
