import { Component, OnInit } from '@angular/core';
import { first } from 'rxjs/operators';
import { Config } from './config';

@Component({ selector: 'app-settings', template: '' })
export class SettingsComponent implements OnInit {
  theme = 'light';

  constructor(private config: Config) {}

  ngOnInit() {
    this.config.load().pipe(first()).subscribe(c => (this.theme = c.theme));
  }
}
