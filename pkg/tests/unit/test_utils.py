import os
import tempfile
import unittest

from idtnet.exceptions import InputException, ValidationException
from idtnet.utils import (
    stream_key, derive_stream, read_config_file, read_echoed_config, atomic_write, read_text
)


class StreamTests(unittest.TestCase):
    def test_same_key_same_numbers(self):
        first = derive_stream(7, "trajectory", 0, 3).random(5)
        second = derive_stream(7, "trajectory", 0, 3).random(5)
        self.assertEqual(first.tolist(), second.tolist())

    def test_labels_and_indices_differ(self):
        base = derive_stream(7, "trajectory", 0, 3).random(5).tolist()
        self.assertNotEqual(base, derive_stream(7, "marginals", 0, 3).random(5).tolist())
        self.assertNotEqual(base, derive_stream(7, "trajectory", 0, 4).random(5).tolist())
        self.assertNotEqual(base, derive_stream(8, "trajectory", 0, 3).random(5).tolist())

    def test_stream_key(self):
        key = stream_key(7, "graph", 2)
        self.assertEqual(key[0], 7)
        self.assertEqual(key[-1], 2)
        self.assertEqual(len(key), 3)

    def test_negative_seed(self):
        self.assertRaises(ValidationException, stream_key, -1, "graph")


class ConfigFileTests(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.path = os.path.join(self.directory.name, "run.conf")

    def tearDown(self):
        self.directory.cleanup()

    def write(self, text):
        with open(self.path, "w", encoding="utf-8") as fp:
            fp.write(text)

    def test_read_config_file(self):
        self.write("# comment\n\n--temp = 2.5\nmax-lag=10\n")
        self.assertEqual(read_config_file(self.path), {"temp": "2.5", "max_lag": "10"})

    def test_missing_file(self):
        try:
            read_config_file(self.path)
            self.fail("expected InputException")
        except InputException as error:
            self.assertEqual(error.error_code, 301)

    def test_malformed_line(self):
        self.write("temp 2.5\n")
        try:
            read_config_file(self.path)
            self.fail("expected InputException")
        except InputException as error:
            self.assertEqual(error.error_code, 302)

    def test_read_echoed_config(self):
        self.write("# n=5\n# seed=7\n# eps=0.001,branch=broken\nu,v\n# late=1\n")
        self.assertEqual(read_echoed_config(self.path), {"n": "5", "seed": "7"})


class FileTests(unittest.TestCase):
    def test_atomic_write(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "out.csv")
            atomic_write(path, "a\n")
            atomic_write(path, "b\n")

            self.assertEqual(read_text(path), "b\n")
            self.assertEqual(os.listdir(directory), ["out.csv"])

    def test_read_text_missing(self):
        self.assertRaises(InputException, read_text, "/nonexistent/idtnet/file.csv")
