#pragma once

#include <stdexcept>
#include <string>

namespace ctc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or argument is outside its admissible range.
class ParamError : public Error {
 public:
  using Error::Error;
};

/// The file is readable but its layout or encoding is unsupported.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A required DICOM attribute is absent or unusable.
class MetadataError : public Error {
 public:
  using Error::Error;
};

/// The file ended before the declared payload.
class TruncatedError : public FormatError {
 public:
  using FormatError::FormatError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Input that makes an operation undefined (e.g. an all-zero soft-threshold level).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace ctc
