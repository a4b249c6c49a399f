"""Walk through the mixing core on synthetic tones.

Shows gain automation in dB, constant-power panning, the -7 dB background
attenuation, and global normalization — no adapters or media files needed.
"""

import numpy as np

from soundscape.adapters import AudioClip
from soundscape.mixer import MixSettings, db_to_amplitude, mixdown, render_track
from soundscape.soundgen import AudioTrack

settings = MixSettings()


def tone(freq, seconds=2.0, amp=0.4):
    t = np.arange(int(seconds * settings.output_sample_rate)) / settings.output_sample_rate
    return amp * np.sin(2 * np.pi * freq * t)


def track(track_id, samples, gain, pan):
    clip = AudioClip(samples=samples, sample_rate=settings.output_sample_rate)
    return AudioTrack(id=track_id, suggestion_id=track_id, clip=clip,
                      duration_target=clip.duration,
                      gain_automation=gain, pan_automation=pan)


def rms(buffer):
    return float(np.sqrt(np.mean(buffer.left**2 + buffer.right**2)))


# A foreground tone at the baseline, panned left-to-right over two seconds.
foreground = track("fg", tone(440), gain=((0.0, 0.0),), pan=((0.0, -1.0), (2.0, 1.0)))

# A background tone: constant gain 7 dB below the baseline, centered.
background = track("bg", tone(220), gain=((0.0, -7.0),), pan=((0.0, 0.0),))

fg = render_track(foreground, settings)
bg = render_track(background, settings)
print(f"foreground RMS: {rms(fg):.5f}")
print(f"background RMS: {rms(bg):.5f}")
print(f"ratio:          {rms(bg) / rms(fg):.5f}  (expected 10^(-7/20) = "
      f"{db_to_amplitude(-7.0):.5f})")

mix, factor = mixdown([foreground, background], settings)
print(f"\nmixdown peak factor: {factor:.5f} (1.0 means no limiting was needed)")
print(f"mix length: {len(mix.left) / settings.output_sample_rate:.2f} s at "
      f"{settings.output_sample_rate} Hz")
