"""Hardware-free VQE emulation for small molecules."""
