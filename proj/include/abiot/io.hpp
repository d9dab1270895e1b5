#pragma once

#include <string>
#include <vector>

#include "abiot/acoustics.hpp"
#include "abiot/flight.hpp"
#include "abiot/sim.hpp"

namespace abiot {

// Locale-independent shortest round-trip formatting.
std::string format_double(double v);

// Writes to <path>.tmp and renames, so the file is complete or absent.
void atomic_write(const std::string& path, const std::string& content);

std::string metrics_csv(const Metrics& m);
std::string events_jsonl(const std::vector<MissionEvent>& events);

// Plain-text P2 PGM, doses scaled to 0..65535, top row = far field edge.
std::string exposure_pgm(const ExposureField& ef);

std::string plan_csv(const Rect& region, double spacing_m, int laps, Corner start_corner);

}  // namespace abiot
