#pragma once

#include <stdexcept>

namespace tmq {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A text input could not be parsed; the message carries file and line context.
class ParseError : public Error {
public:
    using Error::Error;
};

// An element violates the four-rows / distinct-vertices structure.
class MalformedElementError : public Error {
public:
    using Error::Error;
};

// A tetrahedron with (near-)zero volume was handed to a geometric kernel.
class DegenerateTetError : public Error {
public:
    using Error::Error;
};

// The tet-vertex relation is inconsistent (a face bounded by more than
// two elements, duplicate elements, or an unmatched surface triangle).
class ConnectivityError : public Error {
public:
    using Error::Error;
};

// An id lookup failed.
class NotFoundError : public Error {
public:
    using Error::Error;
};

// A lattice coordinate or curve code is outside the configured range.
class RangeError : public Error {
public:
    using Error::Error;
};

class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

// A binary mesh archive has a bad magic, version, or is truncated.
class ArchiveError : public Error {
public:
    using Error::Error;
};

// A query point lies outside every mesh element.
class NotContainedError : public Error {
public:
    using Error::Error;
};

// The face walk could not pick an exit face (guarded; should not occur
// for exterior points and non-degenerate tets).
class TraversalStuckError : public Error {
public:
    using Error::Error;
};

// An operation was called in the wrong store phase (e.g. a query on an
// unfrozen store, or a mutation after freeze).
class StateError : public Error {
public:
    using Error::Error;
};

} // namespace tmq
