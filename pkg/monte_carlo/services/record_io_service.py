import csv

from core.exceptions import ParameterError

from ..models import SampleRecord

RECORD_FIELDS = ['x', 'y', 'a', 'b']


def write_records_csv(records, stream):
    """Header `x,y,a,b`, then one record per LF-terminated line."""
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(RECORD_FIELDS)
    for record in records:
        writer.writerow([record.x, record.y, record.a, record.b])


def read_records_csv(stream):
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != RECORD_FIELDS:
        raise ParameterError(f"expected CSV header {','.join(RECORD_FIELDS)}, got {header}")
    records = []
    for row in reader:
        if not row:
            continue
        try:
            x, y, a, b = (int(value) for value in row)
        except ValueError:
            raise ParameterError(f"line {reader.line_num}: expected four integers, got {row}")
        if min(x, y, a, b) < 0:
            raise ParameterError(f"line {reader.line_num}: negative index in {row}")
        records.append(SampleRecord(x, y, a, b))
    return records
