from mindlin1d.cli import EXIT_BLOWUP, EXIT_CONFIG, EXIT_OK, main


def test_validate_ok(capsys):
    code = main(["validate"])
    assert code == EXIT_OK
    assert "ok" in capsys.readouterr().out


def test_validate_reports_violations(capsys):
    code = main(["validate", "--gamma", "-1"])
    assert code == EXIT_CONFIG
    out = capsys.readouterr().out
    assert "gamma > 0" in out


def test_exact_prints_frequencies(capsys):
    code = main(["exact", "--case", "A"])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "xi=7.034116673835" in out
    assert "eta=6.251660071656" in out


def test_exact_writes_sampled_fields(tmp_path, capsys):
    code = main([
        "exact", "--case", "A", "--grid-n", "16",
        "--sample-time", "0.5", "--output-dir", str(tmp_path),
    ])
    assert code == EXIT_OK
    files = list(tmp_path.glob("exact_*.csv"))
    assert len(files) == 1
    header = files[0].read_text().splitlines()[0]
    assert header == "t,x,u,chi,u_t,chi_t,u_x,chi_x"


def test_simulate_exact_writes_snapshot(tmp_path, capsys):
    code = main([
        "simulate", "--mode", "exact", "--case", "A",
        "--grid-n", "32", "--t-end", "0.2", "--output-dir", str(tmp_path),
    ])
    assert code == EXIT_OK
    assert (tmp_path / "snapshot_t0.200000.csv").exists()
    out = capsys.readouterr().out
    assert "err(u)=" in out


def test_simulate_with_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "mode = exact\nwave = sincos 2pi 1 1 1 1\ngrid_n = 16\nt_end = 0.1\n"
        f"output_dir = {tmp_path / 'out'}\n"
    )
    code = main(["simulate", "--config", str(cfg), "--grid-n", "32"])
    assert code == EXIT_OK
    snap = tmp_path / "out" / "snapshot_t0.100000.csv"
    assert snap.exists()
    assert len(snap.read_text().splitlines()) == 33  # header + overridden N


def test_convergence_table_and_csv(tmp_path, capsys):
    code = main([
        "convergence", "--case", "A", "--t-end", "0.1",
        "--n-list", "16,32", "--output-dir", str(tmp_path),
    ])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "err(u)" in out
    assert (tmp_path / "convergence.csv").exists()


def test_convergence_plot_renders_figure(tmp_path):
    code = main([
        "convergence", "--case", "A", "--t-end", "0.1",
        "--n-list", "16,32", "--output-dir", str(tmp_path), "--plot",
    ])
    assert code == EXIT_OK
    assert (tmp_path / "convergence.png").stat().st_size > 0


def test_inhomogeneous_waterfall_and_figures(tmp_path):
    code = main([
        "inhomogeneous", "--grid-n", "64", "--t-end", "0.1",
        "--bump-height", "0.1", "--kappa", "2.0",
        "--snapshot-times", "0.05,0.1", "--output-dir", str(tmp_path), "--plot",
    ])
    assert code == EXIT_OK
    assert (tmp_path / "snapshot_t0.050000.csv").exists()
    assert (tmp_path / "snapshot_t0.100000.csv").exists()
    waterfall = tmp_path / "waterfall.csv"
    assert waterfall.exists()
    assert waterfall.read_text().splitlines()[0] == "t,x,ux_shifted"
    assert (tmp_path / "waterfall.png").stat().st_size > 0
    assert (tmp_path / "snapshot_t0.100000.png").stat().st_size > 0


def test_waterfall_shift_applied(tmp_path):
    main([
        "inhomogeneous", "--grid-n", "64", "--t-end", "0.1",
        "--bump-height", "0.0", "--regime", "null_inflow", "--kappa", "3.0",
        "--output-dir", str(tmp_path),
    ])
    rows = (tmp_path / "waterfall.csv").read_text().splitlines()[1:]
    shifted = {float(r.split(",")[2]) for r in rows}
    # zero run: every shifted value is exactly kappa * t_end
    assert shifted == {3.0 * 0.1}


def test_invalid_config_exit_code(capsys):
    code = main(["simulate", "--mode", "exact", "--grid-n", "4", "--case", "A"])
    assert code == EXIT_CONFIG
    assert "error:" in capsys.readouterr().err


def test_unknown_config_key_exit_code(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("mode = exact\nbogus = 1\n")
    code = main(["simulate", "--config", str(cfg)])
    assert code == EXIT_CONFIG


def test_blowup_exit_code(monkeypatch, capsys):
    # the admissible configs are all stable, so inject the failure to pin
    # the exit-code mapping
    from mindlin1d import cli
    from mindlin1d.timestepping import BlowUpError

    def explode(cfg):
        raise BlowUpError(1.25)

    monkeypatch.setattr(cli, "run_exact_verification", explode)
    code = cli.main(["simulate", "--mode", "exact", "--case", "A", "--grid-n", "16"])
    assert code == EXIT_BLOWUP
    assert "blow-up" in capsys.readouterr().err
