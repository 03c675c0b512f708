from rest_framework import serializers

from ..utils.rational import format_rational, parse_rational


class RationalField(serializers.Field):
    """
    Exact probability encoded as "num/den" (or a bare integer).
    """
    default_error_messages = {
        'invalid': 'Expected a rational "num/den" string or an integer, got {value!r}.',
    }

    def to_internal_value(self, data):
        try:
            return parse_rational(data)
        except ValueError:
            self.fail('invalid', value=data)

    def to_representation(self, value):
        return format_rational(value)


def convert_table(table, depth, convert, path='p'):
    """
    Walk a nested JSON array of the given depth and convert its leaves,
    reporting the JSON path of the first bad element.
    """
    if depth == 0:
        try:
            return convert(table)
        except serializers.ValidationError as exc:
            raise serializers.ValidationError({path: exc.detail})
    if not isinstance(table, (list, tuple)):
        raise serializers.ValidationError({path: [f'Expected a nested array, got {type(table).__name__}.']})
    return [convert_table(item, depth - 1, convert, f'{path}[{i}]') for i, item in enumerate(table)]


def render_table(table, depth, render):
    if depth == 0:
        return render(table)
    return [render_table(item, depth - 1, render) for item in table]
