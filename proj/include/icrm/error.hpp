#pragma once

#include <stdexcept>
#include <string>

namespace icrm {

/// Malformed or insufficient input data (corpus files, canonical records,
/// snapshots). The CLI maps this to exit status 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameter values that violate a configuration invariant. The CLI maps
/// this to exit status 1.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Unreadable, corrupt or version-mismatched persisted state.
class SnapshotError : public DataError {
public:
    using DataError::DataError;
};

}  // namespace icrm
