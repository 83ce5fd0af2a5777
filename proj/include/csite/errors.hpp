// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace csite {

// Error hierarchy. Everything thrown by the library derives from Error so
// callers (CLI, harness) can map failures onto exit codes in one place.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

class OddLength : public Error {
public:
    explicit OddLength(const std::string& msg) : Error(msg) {}
};

class WindowTooSmall : public Error {
public:
    explicit WindowTooSmall(const std::string& msg) : Error(msg) {}
};

class WindowNotFull : public Error {
public:
    explicit WindowNotFull(const std::string& msg) : Error(msg) {}
};

class NotCalibrated : public Error {
public:
    explicit NotCalibrated(const std::string& msg) : Error(msg) {}
};

class InvalidConfig : public Error {
public:
    explicit InvalidConfig(const std::string& msg) : Error(msg) {}
};

class InvalidToken : public Error {
public:
    explicit InvalidToken(const std::string& msg) : Error(msg) {}
};

class MalformedPayload : public Error {
public:
    explicit MalformedPayload(const std::string& msg) : Error(msg) {}
};

class ProtocolViolation : public Error {
public:
    explicit ProtocolViolation(const std::string& msg) : Error(msg) {}
};

class RateTooHigh : public Error {
public:
    explicit RateTooHigh(const std::string& msg) : Error(msg) {}
};

class InvalidAxisValue : public Error {
public:
    explicit InvalidAxisValue(const std::string& msg) : Error(msg) {}
};

class EmptyTrace : public Error {
public:
    explicit EmptyTrace(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

class CorruptHeader : public Error {
public:
    explicit CorruptHeader(const std::string& msg) : Error(msg) {}
};

} // namespace csite
