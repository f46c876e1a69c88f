#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qlnc/errors.hpp"
#include "qlnc/network.hpp"

namespace qlnc {

enum class PayloadKind : std::uint8_t { Qubit, ClassicalBit };

struct TrafficRecord {
    std::int64_t step = 0;
    std::size_t link = 0;
    PayloadKind payload = PayloadKind::ClassicalBit;
    std::string note;
};

// Validating movement log. Every record is checked against the hosting
// link's rate and kind as it is written: at most `rate` payload units per
// link per step, qubits only on quantum links (classical bits may ride
// quantum links as basis states, counted against the qubit rate). Records
// must arrive in nondecreasing step order; detail retention is optional so
// that long runs stay bounded while the checks still run on every record.
class TrafficLog {
public:
    explicit TrafficLog(std::shared_ptr<const Network> net, bool keep_records = true)
        : net_(std::move(net)), keep_records_(keep_records) {}

    void record(std::int64_t step, std::size_t link, PayloadKind payload,
                std::string note);

    const Network& network() const { return *net_; }
    const std::vector<TrafficRecord>& records() const { return records_; }
    bool keeps_records() const { return keep_records_; }
    std::int64_t validated_payloads() const { return validated_; }
    std::int64_t qubit_payloads() const { return qubit_payloads_; }
    std::int64_t bit_payloads() const { return bit_payloads_; }
    std::int64_t last_step() const { return current_step_; }

private:
    std::shared_ptr<const Network> net_;
    bool keep_records_;
    std::vector<TrafficRecord> records_;
    std::int64_t current_step_ = -1;
    std::map<std::size_t, std::int64_t> step_usage_;
    std::int64_t validated_ = 0;
    std::int64_t qubit_payloads_ = 0;
    std::int64_t bit_payloads_ = 0;
};

}  // namespace qlnc
