"""Bitangents of plane quartics, signed counts and type identities."""
