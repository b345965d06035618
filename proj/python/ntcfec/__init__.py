"""Locked convolutional codes with NTC-enhanced soft Viterbi decoding,
a Reed-Solomon baseline, and the storage-channel Monte Carlo harness."""

from ._core import (
    CodeSpec,
    RsParams,
    awgn,
    bpsk_modulate,
    conv_encode,
    decode_pipeline,
    encode_pipeline,
    hard_slice,
    lock_insert,
    lock_strip,
    noise_sigma,
    normal_deviates,
    pack_bits,
    read_bit_file,
    read_sample_file,
    rs_decode,
    rs_encode,
    run_sweep,
    unpack_bits,
    write_bit_file,
    write_sample_file,
)

__all__ = [
    "CodeSpec",
    "RsParams",
    "awgn",
    "bpsk_modulate",
    "conv_encode",
    "decode_pipeline",
    "encode_pipeline",
    "hard_slice",
    "lock_insert",
    "lock_strip",
    "noise_sigma",
    "normal_deviates",
    "pack_bits",
    "read_bit_file",
    "read_sample_file",
    "rs_decode",
    "rs_encode",
    "run_sweep",
    "unpack_bits",
    "write_bit_file",
    "write_sample_file",
]
