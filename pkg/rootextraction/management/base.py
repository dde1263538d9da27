import json
import logging
import random
import secrets
import sys

from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

from rootextraction.exceptions import BadParams, RootExtractionError
from rootextraction.serializers import TorsionContextSerializer, first_code

logger = logging.getLogger('rootextraction.commands')

EXIT_ERROR = 1
EXIT_NO_SOLUTION = 2


class CommandFailure(Exception):
    """Carries a JSON payload and exit code out of JsonCommand.execute_json."""

    def __init__(self, payload, returncode):
        super().__init__(payload.get('kind', payload.get('status')))
        self.payload = payload
        self.returncode = returncode


class JsonCommand(BaseCommand):
    """
    Base for commands that read JSON and write JSON.

    Subclasses implement execute_json() and return the payload to emit. Errors
    are emitted as {"status": "error", "kind": ...} with exit code 1.
    """
    uses_ctx = True
    uses_seed = True

    def add_arguments(self, parser):
        if self.uses_ctx:
            parser.add_argument('--ctx', required=True, help='Context JSON file.')
        if self.uses_seed:
            parser.add_argument('--seed', type=int, default=None, help='Seed for reproducible randomized searches.')
        parser.add_argument('--out', default=None, help='Output file (default: stdout).')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        try:
            payload = self.execute_json(**options)
            returncode = 0
        except CommandFailure as failure:
            payload, returncode = failure.payload, failure.returncode
        except serializers.ValidationError as exc:
            payload = {'status': 'error', 'kind': first_code(exc.get_codes()) or 'invalid', 'detail': exc.detail}
            returncode = EXIT_ERROR
        except RootExtractionError as exc:
            payload = {'status': 'error', **exc.as_dict()}
            returncode = EXIT_ERROR
        except (OSError, json.JSONDecodeError) as exc:
            payload = {'status': 'error', 'kind': 'malformed', 'detail': str(exc)}
            returncode = EXIT_ERROR

        self.emit(payload, options.get('out'))
        if returncode:
            raise CommandError(payload.get('kind', payload['status']), returncode=returncode)

    def execute_json(self, **options):
        raise NotImplementedError('subclasses of JsonCommand must provide an execute_json() method')

    def emit(self, payload, out=None):
        text = json.dumps(payload, default=str)
        if out:
            with open(out, 'w', encoding='utf-8') as handle:
                handle.write(text + '\n')
        else:
            self.stdout.write(text)

    def load_json(self, path):
        """Parse a JSON file; '-' reads standard input."""
        if path == '-':
            return json.load(sys.stdin)
        with open(path, encoding='utf-8') as handle:
            return json.load(handle)

    def load_context(self, path):
        serializer = TorsionContextSerializer(data=self.load_json(path))
        serializer.is_valid(raise_exception=True)
        return serializer.save()

    def parse(self, serializer_class, data, **context):
        """A validated serializer; callers take .save() or .validated_data."""
        serializer = serializer_class(data=data, context=context)
        serializer.is_valid(raise_exception=True)
        return serializer

    def make_rng(self, seed):
        if seed is None:
            seed = secrets.randbits(64)
        elif not 0 <= seed < 2 ** 64:
            raise BadParams(f'Seed must be an unsigned 64-bit integer, got {seed}.', code='invalid_seed')
        logger.info('%s: using seed %d', self.__class__.__module__.rsplit('.', 1)[-1], seed)
        return random.Random(seed)
