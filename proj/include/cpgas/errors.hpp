#pragma once

#include <stdexcept>
#include <string>

namespace cpgas {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value violates a documented invariant of a domain type.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// The two atoms are too close in frequency to be treated as independent.
class DegenerateAtoms : public Error {
public:
    using Error::Error;
};

// Lossless polarizability evaluated exactly at its resonance.
class PoleOnAxis : public Error {
public:
    using Error::Error;
};

class ZeroSeparation : public Error {
public:
    using Error::Error;
};

// No absorption, so the photon mean free path is infinite.
class LosslessMedium : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

class StepUnderflow : public Error {
public:
    using Error::Error;
};

} // namespace cpgas
