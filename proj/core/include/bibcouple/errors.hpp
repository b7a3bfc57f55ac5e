#pragma once

#include <stdexcept>
#include <string>

namespace bibcouple {

// Pipeline stages, numbered by the process exit code they map to.
enum class Stage : int {
    config = 2,
    ingest = 3,
    resolution = 4,
    network = 5,
    percolation = 6,
};

inline const char* stage_name(Stage s) {
    switch (s) {
        case Stage::config: return "config";
        case Stage::ingest: return "ingest";
        case Stage::resolution: return "resolution";
        case Stage::network: return "network";
        case Stage::percolation: return "percolation";
    }
    return "unknown";
}

class StageError : public std::runtime_error {
  public:
    StageError(Stage stage, const std::string& message)
        : std::runtime_error(std::string(stage_name(stage)) + ": " + message), stage_(stage) {}

    Stage stage() const { return stage_; }
    int exit_code() const { return static_cast<int>(stage_); }

  private:
    Stage stage_;
};

inline StageError config_error(const std::string& msg) { return StageError(Stage::config, msg); }
inline StageError ingest_error(const std::string& msg) { return StageError(Stage::ingest, msg); }

}  // namespace bibcouple
