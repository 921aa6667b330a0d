# Rotor package
