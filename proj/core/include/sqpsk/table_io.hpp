#ifndef SQPSK_TABLE_IO_HPP
#define SQPSK_TABLE_IO_HPP

#include <iosfwd>
#include <string>

#include "sqpsk/analysis.hpp"

namespace sqpsk {

/// Formats one value the way every emitted data cell is formatted:
/// printf %.17g (17 significant digits, exact double round-trip).
std::string format_cell(double value);

/// CSV layout: `# key: value` metadata header, then one section per leading
/// (block) axis value introduced by `# block: name=value`. Inside a section
/// the last axis runs over rows and the second-to-last over columns; the
/// header row names the row axis and one column per grid value
/// (`name=value`, or plain labels taken from a `<axis>-labels` metadata
/// entry). All numbers use %.17g; NaN cells print as "nan".
void write_csv(const ScanTable& table, std::ostream& os);

/// JSON mirror of the ScanTable fields one-to-one: axis_names, axis_grids,
/// values (flat, row-major; NaN emitted as null), metadata (ordered object).
void write_json(const ScanTable& table, std::ostream& os);

/// Parses write_csv output back into a ScanTable (values bit-exact thanks to
/// the %.17g contract; "nan"/null cells parse back to NaN). Supports every
/// layout write_csv produces.
ScanTable read_csv(std::istream& is);

}  // namespace sqpsk

#endif  // SQPSK_TABLE_IO_HPP
