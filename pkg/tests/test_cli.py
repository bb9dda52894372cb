import json
import logging

import pytest

from cdii.cli import main
from cdii.network.checkpoint import load_checkpoint

TINY = ['--set', 'data.n=24', '--set', 'data.grid_res=33', '--set', 'network.width=4',
        '--set', 'network.depth=1', '--set', 'train.batch_size=16', '--set', 'train.epochs=2',
        '--set', 'train.log_every=1', '--set', 'eval.resolution=17']

@pytest.fixture(autouse=True)
def no_seed_env(monkeypatch):
    monkeypatch.delenv('CDII_SEED', raising=False)

def test_size_prints_json(capsys):
    assert main(['size', '--n', '1000000', '--d', '2', '--s', '1', '--mu', '0.5']) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload['log_base'] == 'natural'
    assert payload['rate_exponent'] < 0
    assert {'S', 'B', 'rate_exponent'} <= set(payload)

def test_size_rejects_bad_input():
    assert main(['size', '--n', '0']) == 2

def test_generate_custom_constant(tmp_path):
    code = main(['generate', '--output', str(tmp_path), '--set', 'example.id=custom', '--set', 'example.value=1.0',
                 '--set', 'noise.level=0'] + TINY)
    assert code == 0
    rows = (tmp_path / 'data' / 'interior.csv').read_text().splitlines()
    assert len(rows) == 25
    assert all(abs(float(r.split(',')[2]) - 1.0) <= 1e-8 for r in rows[1:])
    echoed = json.loads((tmp_path / 'data' / 'config.json').read_text())
    assert echoed['example'] == {'id': 'custom', 'value': 1.0}

def test_generate_is_idempotent(tmp_path):
    args = ['generate', '--preset', 'discontinuous'] + TINY
    assert main(args + ['--output', str(tmp_path / 'a')]) == 0
    assert main(args + ['--output', str(tmp_path / 'b')]) == 0
    for name in ('interior.csv', 'boundary.csv', 'provenance.json', 'gamma_true.csv'):
        assert (tmp_path / 'a' / 'data' / name).read_bytes() == (tmp_path / 'b' / 'data' / name).read_bytes()

def test_train_with_zero_learning_rate(tmp_path):
    out = ['--output', str(tmp_path)] + TINY
    assert main(['generate'] + out) == 0
    assert main(['train', '--set', 'train.lr=0'] + out) == 0
    train_dir = tmp_path / 'train'
    assert load_checkpoint(train_dir / 'ckpt_final') == load_checkpoint(train_dir / 'ckpt_0')
    totals = [line.split(',')[-1] for line in (train_dir / 'loss_history.csv').read_text().splitlines()[1:]]
    assert len(totals) == 3 and len(set(totals)) == 1

def test_full_pipeline(tmp_path, capsys):
    assert main(['full', '--output', str(tmp_path)] + TINY) == 0
    metrics = json.loads((tmp_path / 'eval' / 'metrics.json').read_text())
    assert metrics['example'] == 'four_mode'
    assert metrics['widths'] == [2, 4, 1]
    assert metrics['epochs'] == 2
    assert all(metrics[k] >= 0 for k in ('err_gamma', 'err_u', 'err_a'))
    assert (tmp_path / 'eval' / 'gamma_hat.csv').exists()
    assert 'err(gamma)' in capsys.readouterr().out

def test_evaluate_rejects_mismatched_widths(tmp_path):
    out = ['--output', str(tmp_path)] + TINY
    assert main(['full'] + out) == 0
    assert main(['evaluate', '--set', 'network.width=5'] + out) == 4

def test_configuration_errors_exit_2(tmp_path):
    assert main(['generate', '--output', str(tmp_path), '--set', 'train.epochs=0']) == 2
    assert main(['generate', '--output', str(tmp_path), '--set', 'bogus=1']) == 2
    assert not (tmp_path / 'data').exists()

def test_missing_dataset_exits_4(tmp_path):
    assert main(['train', '--output', str(tmp_path)] + TINY) == 4

def test_bad_dataset_exits_4(tmp_path):
    out = ['--output', str(tmp_path)] + TINY
    assert main(['generate'] + out) == 0
    path = tmp_path / 'data' / 'boundary.csv'
    path.write_text(path.read_text().replace('x,y,f', 'x,y,g'))
    assert main(['train'] + out) == 4

def test_evaluate_reports_checkpoint_epoch(tmp_path, caplog):
    out = ['--output', str(tmp_path)] + TINY
    assert main(['full'] + out) == 0
    caplog.set_level(logging.INFO, logger='cdii')
    caplog.clear()
    assert main(['evaluate', '--checkpoint', str(tmp_path / 'train' / 'ckpt_1')] + out) == 4
    assert main(['evaluate'] + out) == 0
    assert 'from epoch 2' in caplog.text
