"""
JSON schemas for contexts, points, instances and solutions.

Field elements and points need to know their field or curve, which the
serializers expect in their context under 'field', 'curve' and 'ctx'.
"""
import re

from rest_framework import serializers

from .curve import CurveParams, Point
from .exceptions import BadParams
from .field import PrimeField
from .solver import GrepInstance, SimulInstance
from .torsion import TorsionContext

DECIMAL_RE = re.compile(r'^(0|[1-9][0-9]*)$')


def first_code(codes):
    """First error code in a nested ValidationError.get_codes() structure."""
    if isinstance(codes, str):
        return codes
    if isinstance(codes, dict):
        codes = list(codes.values())
    for item in codes:
        code = first_code(item)
        if code:
            return code
    return None


class DecimalStringField(serializers.Field):
    """Arbitrary-precision non-negative integer carried as a decimal string."""
    default_error_messages = {
        'invalid': 'Expected a decimal string without leading zeros.',
    }

    def to_internal_value(self, data):
        if not isinstance(data, str) or not DECIMAL_RE.match(data):
            self.fail('invalid')
        return int(data)

    def to_representation(self, value):
        return str(int(value))


class Fp2Field(serializers.Field):
    """{"c0": "<decimal>", "c1": "<decimal>"}; the modulus comes from the context."""
    default_error_messages = {
        'invalid': 'Expected an object with decimal strings "c0" and "c1".',
        'out_of_range': 'Coordinates must be reduced below p.',
    }

    def to_internal_value(self, data):
        field = self.context['field']
        if not isinstance(data, dict) or set(data) != {'c0', 'c1'}:
            self.fail('invalid')
        coords = []
        for key in ('c0', 'c1'):
            value = data[key]
            if not isinstance(value, str) or not DECIMAL_RE.match(value):
                self.fail('invalid')
            coords.append(int(value))
        if any(c >= field.p for c in coords):
            self.fail('out_of_range')
        return field.fp2(*coords)

    def to_representation(self, value):
        return {'c0': str(value.c0), 'c1': str(value.c1)}


class PointField(serializers.Field):
    """
    "identity" or {"x": <Fp2>, "y": <Fp2>}. Points are checked against the
    curve unless the context sets 'lenient', and against the torsion subgroup
    when the context carries a 'ctx' and 'torsion' is set.
    """
    default_error_messages = {
        'invalid': 'Expected "identity" or an object with "x" and "y".',
        'off_curve': 'Point does not lie on the curve.',
        'not_in_torsion': 'Point is not in the l^e-torsion subgroup.',
    }

    def to_internal_value(self, data):
        if data == 'identity':
            return Point()
        if not isinstance(data, dict) or set(data) != {'x', 'y'}:
            self.fail('invalid')
        curve = self.context['curve']
        coordinate = Fp2Field()
        coordinate.bind('coordinate', self)
        pt = Point(coordinate.to_internal_value(data['x']), coordinate.to_internal_value(data['y']))
        if self.context.get('lenient'):
            return pt
        if not curve.is_on_curve(pt):
            self.fail('off_curve')
        ctx = self.context.get('ctx')
        if self.context.get('torsion') and ctx is not None and not ctx.contains(pt):
            self.fail('not_in_torsion')
        return pt

    def to_representation(self, value):
        if value.is_identity:
            return 'identity'
        coordinate = Fp2Field()
        return {'x': coordinate.to_representation(value.x), 'y': coordinate.to_representation(value.y)}


class TorsionContextSerializer(serializers.Serializer):
    """{"p": str, "l": int, "e": int, "f": str, "a": <Fp2>, "b": <Fp2>}"""
    p = DecimalStringField()
    l = serializers.IntegerField(min_value=2)
    e = serializers.IntegerField(min_value=1)
    f = DecimalStringField()
    a = Fp2Field(source='curve.a')
    b = Fp2Field(source='curve.b')

    def to_internal_value(self, data):
        # a and b are parsed in F_{p^2}, so p has to be known first
        if isinstance(data, dict):
            try:
                p = DecimalStringField().to_internal_value(data.get('p'))
                self.context['field'] = PrimeField(p)
            except serializers.ValidationError as exc:
                raise serializers.ValidationError({'p': exc.detail})
            except BadParams as exc:
                raise serializers.ValidationError({'p': [str(exc.detail)]}, code=exc.code)
        return super().to_internal_value(data)

    def validate(self, attrs):
        field = self.context['field']
        try:
            curve = CurveParams(field, attrs['curve']['a'], attrs['curve']['b'], field.p + 1)
            attrs['context'] = TorsionContext(curve, attrs['l'], attrs['e'], attrs['f'])
        except BadParams as exc:
            raise serializers.ValidationError(str(exc.detail), code=exc.code)
        return attrs

    def create(self, validated_data):
        return validated_data['context']


class TorsionBasisSerializer(serializers.Serializer):
    P_gen = PointField()
    Q_gen = PointField()
    pairing = Fp2Field()


class GrepInstanceSerializer(serializers.Serializer):
    """{"K": <Point>, "m": "<decimal>", "n": "<decimal>"}"""
    K = PointField()
    m = DecimalStringField()
    n = DecimalStringField()

    def create(self, validated_data):
        return GrepInstance(**validated_data)


class SimulInstanceSerializer(serializers.Serializer):
    K1 = PointField()
    K2 = PointField()
    m1 = DecimalStringField()
    n1 = DecimalStringField()
    m2 = DecimalStringField()
    n2 = DecimalStringField()

    def create(self, validated_data):
        return SimulInstance(**validated_data)


class GrepSolutionSerializer(serializers.Serializer):
    """{"status": "ok", "P": <Point>, "Q": <Point>, "case": 1|2, "u": int, "r": int}"""
    P = PointField()
    Q = PointField()
    case = serializers.IntegerField(read_only=True)
    u = serializers.IntegerField(read_only=True)
    r = serializers.IntegerField(read_only=True)

    def to_representation(self, instance):
        return {'status': 'ok', **super().to_representation(instance)}


class SimulSolutionSerializer(serializers.Serializer):
    """{"status": "ok", "P": <Point>, "Q": <Point>, "branch": "unique"|"coset", "r": int}"""
    P = PointField()
    Q = PointField()
    branch = serializers.CharField(read_only=True)
    r = serializers.IntegerField(read_only=True)

    def to_representation(self, instance):
        return {'status': 'ok', **super().to_representation(instance)}


class VerdictSerializer(serializers.Serializer):
    in_group = serializers.BooleanField()
    equation = serializers.BooleanField()
    independent = serializers.BooleanField()
    ok = serializers.BooleanField()

    def to_representation(self, instance):
        data = super().to_representation(instance)
        return {'status': 'ok' if instance.ok else 'rejected', **data}
