import json
import os
from unittest import mock

from django.test import SimpleTestCase, override_settings

from .exceptions import CdcError, NotApplicableError, NotPlanarError, ProofStepError, SearchLimitError, StructureError
from .utils import dump_json, parallel_map, resolve_workers


def square(x):
    return x * x


class ResolveWorkersTests(SimpleTestCase):

    @mock.patch.dict(os.environ, {}, clear=True)
    def test_requested_value(self):
        self.assertEqual(resolve_workers(3), 3)
        self.assertEqual(resolve_workers(0), 1)

    @mock.patch.dict(os.environ, {}, clear=True)
    @override_settings(CDC_WORKERS=4)
    def test_settings_default(self):
        self.assertEqual(resolve_workers(), 4)

    @mock.patch.dict(os.environ, {'CDC_WORKERS': '2'})
    def test_environment_wins(self):
        self.assertEqual(resolve_workers(8), 2)


class ParallelMapTests(SimpleTestCase):

    def test_in_process(self):
        self.assertEqual(parallel_map(square, range(5)), [0, 1, 4, 9, 16])

    def test_pool_keeps_order(self):
        self.assertEqual(parallel_map(square, range(6), workers=2), [0, 1, 4, 9, 16, 25])


class DumpJsonTests(SimpleTestCase):

    def test_canonical(self):
        text = dump_json({'b': [1, 2], 'a': None})
        self.assertEqual(text, '{"a":null,"b":[1,2]}')
        self.assertEqual(json.loads(text)['a'], None)


class ExceptionTests(SimpleTestCase):

    def test_hierarchy(self):
        for cls in (NotPlanarError, StructureError, NotApplicableError, ProofStepError, SearchLimitError):
            self.assertTrue(issubclass(cls, CdcError))
