import json

import pytest

from streamcut.core.errors import MalformedEdgeError, StreamValidityError
from streamcut.schemas import StreamKind
from streamcut.services import (
    format_stream, gen_planted_bipartite, parse_stream, read_instance, write_instance, write_stream,
)


def test_format_stream_layout(stream_of):
    text = format_stream(stream_of(3, [(0, 1), (1, 2, -1)], StreamKind.DYNAMIC), comment="demo")
    assert text == "# demo\nn 3 dyn\ne 0 1 +1\ne 1 2 -1\n"


def test_parse_stream_reads_header_and_events():
    stream = parse_stream("# header\n\nn 4 rand\ne 0 1 +1\ne 2 3 1\n")
    assert stream.n == 4
    assert stream.kind is StreamKind.INSERTION_RANDOM_ORDER
    assert [(e.u, e.v, e.delta) for e in stream.events] == [(0, 1, 1), (2, 3, 1)]


def test_parse_stream_canonicalizes_endpoints():
    stream = parse_stream("n 3 ins\ne 2 0 +1\n")
    assert stream.events[0].edge == (0, 2)


@pytest.mark.parametrize("text, line", [
    ("n 3 ins\ne 1 1 +1\n", 2),
    ("n 3 ins\ne 0 3 +1\n", 2),
    ("n 3 ins\ne 0 1 +2\n", 2),
])
def test_parse_stream_rejects_malformed_edges(text, line):
    with pytest.raises(MalformedEdgeError) as info:
        parse_stream(text)
    assert info.value.line_number == line


@pytest.mark.parametrize("text", [
    "e 0 1 +1\n",
    "n three ins\n",
    "n 3 weird\n",
    "n 3 ins\nx 0 1\n",
    "n 3 ins\ne a b +1\n",
    "",
])
def test_parse_stream_rejects_bad_records(text):
    with pytest.raises(StreamValidityError):
        parse_stream(text)


def test_instance_with_sidecar(tmp_path):
    instance = gen_planted_bipartite(3, 4, 7, rng_seed=2)
    path = write_instance(instance, tmp_path / "inst.stream", comment="bipartite:nl=3,nr=4,m=7")
    stream, meta = read_instance(path)
    assert stream == instance.stream
    assert meta == instance.metadata()
    assert json.loads((tmp_path / "inst.stream.json").read_text())["opt_value"] == 7


def test_instance_without_sidecar(tmp_path, stream_of):
    path = write_stream(stream_of(2, [(0, 1)]), tmp_path / "bare.stream")
    stream, meta = read_instance(path)
    assert meta is None
    assert stream.n == 2


@pytest.mark.parametrize("token", ["ins", "rand"])
def test_parse_stream_rejects_deletions_in_insertion_streams(token):
    text = f"n 3 {token}\ne 0 1 +1\ne 0 1 -1\ne 0 1 +1\ne 0 1 -1\ne 1 2 +1\n"
    with pytest.raises(StreamValidityError) as info:
        parse_stream(text)
    assert info.value.line_number == 3


def test_parse_stream_accepts_deletions_in_dynamic_streams():
    stream = parse_stream("n 3 dyn\ne 0 1 +1\ne 0 1 -1\ne 1 2 +1\n")
    assert [e.delta for e in stream.events] == [1, -1, 1]
