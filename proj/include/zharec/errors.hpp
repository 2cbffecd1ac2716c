// Copyright 2026 The zharec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace zharec {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or unusable input data (files, sequences, configurations).
// The CLI maps these to exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

// Numerical failure inside an algorithm (degenerate energy, broken
// recursion). The CLI maps these to exit code 3.
class NumericError : public Error {
 public:
  using Error::Error;
};

// -- signal_io ---------------------------------------------------------

class MalformedHeader : public DataError { public: using DataError::DataError; };
class UnsupportedEncoding : public DataError { public: using DataError::DataError; };
class EmptyAudio : public DataError { public: using DataError::DataError; };
class InvalidLength : public DataError { public: using DataError::DataError; };
class ClipTooShort : public DataError { public: using DataError::DataError; };
class InvalidConfig : public DataError { public: using DataError::DataError; };
class IoError : public DataError { public: using DataError::DataError; };

// -- lpc_analysis ------------------------------------------------------

class LagTooLarge : public DataError { public: using DataError::DataError; };
class ZeroEnergy : public NumericError { public: using NumericError::NumericError; };
class NumericalBreakdown : public NumericError { public: using NumericError::NumericError; };
class NoUsableFrames : public DataError { public: using DataError::DataError; };

// -- quantizer ---------------------------------------------------------

class TooFewVectors : public DataError { public: using DataError::DataError; };
class DimensionMismatch : public DataError { public: using DataError::DataError; };

// -- hmm_core ----------------------------------------------------------

class IndexOutOfRange : public DataError { public: using DataError::DataError; };
class LengthMismatch : public DataError { public: using DataError::DataError; };
class SequenceTooLong : public DataError { public: using DataError::DataError; };
class SymbolOutOfRange : public DataError { public: using DataError::DataError; };
class EmptySequence : public DataError { public: using DataError::DataError; };
class EmptyTrainingSet : public DataError { public: using DataError::DataError; };

// -- recognizer --------------------------------------------------------

class InsufficientClasses : public DataError { public: using DataError::DataError; };
class EmptyClass : public DataError { public: using DataError::DataError; };
class EmptyEvaluationSet : public DataError { public: using DataError::DataError; };

// -- persistence -------------------------------------------------------

class ModelFormatError : public DataError { public: using DataError::DataError; };
class ManifestError : public DataError { public: using DataError::DataError; };

}  // namespace zharec
