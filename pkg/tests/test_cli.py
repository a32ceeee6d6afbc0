import json
import subprocess
import sys

import pytest

from pgplane import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_field_mul(capsys):
    code, doc = run_json(capsys, 'field', '9', '--op', 'mul',
                         '--a', '3', '--b', '3')
    assert code == 0
    assert doc['value'] == 2
    assert doc['field']['modulus'] == [1, 0, 1]


def test_field_inv(capsys):
    code, doc = run_json(capsys, 'field', '7', '--op', 'inv', '--a', '3')
    assert code == 0 and doc['value'] == 5


def test_field_bad_q(capsys):
    assert cli.main(['field', '6', '--op', 'inv', '--a', '1']) == 2


def test_plane_counts(capsys):
    code, doc = run_json(capsys, 'plane', '5')
    assert code == 0
    assert doc['points'] == 31 and doc['lines'] == 31


def test_construct_triangle(capsys):
    code, doc = run_json(capsys, 'construct', 'projective_triangle', '5')
    assert code == 0
    assert len(doc['points']) == 9
    assert doc['points'] == sorted(doc['points'])


def test_construct_blokhuis(capsys):
    code, doc = run_json(capsys, 'construct', 'blokhuis_semioval', '7')
    assert code == 0 and len(doc['points']) == 9


def test_construct_even_q_rejected(capsys):
    assert cli.main(['construct', 'projective_triangle', '4']) == 2


def test_analyze_round_trip(tmp_path, capsys):
    code, out = run(capsys, 'construct', 'conic_plus_external', '5')
    assert code == 0
    path = tmp_path / 'set.json'
    path.write_text(out)
    code, doc = run_json(capsys, 'analyze', str(path))
    assert code == 0
    assert json.dumps(doc['input'], indent=2, sort_keys=True) == out.rstrip('\n')
    assert doc['report']['size'] == 7
    for entry in doc['report']['points']:
        assert isinstance(entry['weight'], (int, str))


def test_analyze_rejects_unnormalized(tmp_path, capsys):
    doc = {'field': {'p': 5, 'h': 1, 'modulus': [0, 1]},
           'points': [[2, 0, 0]]}
    path = tmp_path / 'bad.json'
    path.write_text(json.dumps(doc))
    assert cli.main(['analyze', str(path)]) == 2


def test_analyze_rejects_duplicates(tmp_path, capsys):
    doc = {'field': {'p': 5, 'h': 1, 'modulus': [0, 1]},
           'points': [[1, 0, 0], [1, 0, 0]]}
    path = tmp_path / 'bad.json'
    path.write_text(json.dumps(doc))
    assert cli.main(['analyze', str(path)]) == 2


def test_analyze_rejects_garbage(tmp_path, capsys):
    path = tmp_path / 'bad.json'
    path.write_text('{not json')
    assert cli.main(['analyze', str(path)]) == 2


def test_verify_lemma_poly(capsys):
    code, doc = run_json(capsys, 'verify', 'lemma-poly',
                         '--q', '9', '--map', 'power', '--a', '3')
    assert code == 0
    assert doc['report']['lemma']['pass'] is True


def test_verify_bisecant_structure(tmp_path, capsys):
    code, out = run(capsys, 'construct', 'projective_triangle', '5')
    path = tmp_path / 'tri.json'
    path.write_text(out)
    code, doc = run_json(capsys, 'verify', 'bisecant-structure',
                         '--input', str(path))
    assert code == 0 and all(r['pass'] for r in doc['report'])


def test_verify_direction_bounds(capsys):
    code, doc = run_json(capsys, 'verify', 'direction-bounds',
                         '--q', '9', '--map', 'power', '--a', '3')
    assert code == 0 and doc['report']['pass'] is True
    assert doc['report']['N'] == 4


def test_verify_peter(capsys):
    code, doc = run_json(capsys, 'verify', 'peter', '--q', '5')
    assert code == 0
    assert doc['report']['witnesses'] == []


def test_verify_requires_q(capsys):
    assert cli.main(['verify', 'peter']) == 2


def test_verify_unknown_theorem(capsys):
    assert cli.main(['verify', 'no-such-thing', '--q', '5']) == 2


def test_search_spec(tmp_path, capsys):
    spec = {'q': 5, 'n': 7, 'objective': 'min_odd_secants'}
    path = tmp_path / 'spec.json'
    path.write_text(json.dumps(spec))
    code, doc = run_json(capsys, 'search', str(path))
    assert code == 0
    assert doc['optimum'] == 8 and doc['exhaustive'] is True


def test_search_budget_exit(tmp_path):
    # a fresh process, so no orbit representatives are cached yet
    spec = {'q': 5, 'n': 7, 'objective': 'min_odd_secants', 'nodeBudget': 20}
    path = tmp_path / 'spec.json'
    path.write_text(json.dumps(spec))
    proc = subprocess.run([sys.executable, '-m', 'pgplane.cli',
                           'search', str(path)],
                          capture_output=True, text=True)
    assert proc.returncode == 3
    assert json.loads(proc.stdout)['exhaustive'] is False


def test_search_malformed_spec(tmp_path, capsys):
    path = tmp_path / 'spec.json'
    path.write_text(json.dumps({'q': 5}))
    assert cli.main(['search', str(path)]) == 2


def test_threads_flag_does_not_change_output(capsys):
    _, one = run(capsys, 'plane', '7')
    _, four = run(capsys, '--threads', '4', 'plane', '7')
    assert one == four


def test_global_flag_after_subcommand(capsys):
    code, out = run(capsys, 'plane', '5', '--format', 'text')
    assert code == 0
    assert 'points: 31' in out


def test_entry_point_subprocess():
    proc = subprocess.run([sys.executable, '-m', 'pgplane.cli', 'plane', '3'],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)['points'] == 13
