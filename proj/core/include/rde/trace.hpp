/*
 * Trace file I/O: one JSON record per line (header, steps, optional result).
 * Layout documented in formats.md.
 */
#pragma once

#include <filesystem>
#include <optional>

#include "rde/episode.hpp"

namespace rde {

struct TraceFile {
  Trace trace;
  std::optional<EpisodeResult> result;  // without the nested trace
};

void write_trace(const Trace& trace, const EpisodeResult* result,
                 const std::filesystem::path& path);

TraceFile read_trace(const std::filesystem::path& path);

}  // namespace rde
